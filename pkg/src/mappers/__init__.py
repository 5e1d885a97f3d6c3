"""Mappers for data transformations."""

from src.mappers.transcript_mapper import TranscriptDecodeError, TranscriptMapper

__all__ = ['TranscriptDecodeError', 'TranscriptMapper']
