"""
End-to-end session tests.

Seeded sessions with injected exponents are compared against the closed-form
key: [g_1..g_n]^{prod a} for Protocol I and [x,_n g]^{prod a} for Protocol II.
"""

import random

import pytest

from src.mappers.transcript_mapper import TranscriptMapper
from src.models.models import ProtocolKind
from src.service.protocols.runner import run_session
from src.service.protocols.session import derive_key, expected_session_key, setup_session

pytest_plugins = ['tests.service.protocols.fixtures']


def seeded_exponents(seed: int, users: int, q: int):
    rng = random.Random(seed)
    return tuple(rng.randint(1, q - 1) for _ in range(users))


class TestRunSessionProtocol1:
    """Protocol I on UT(n + 1, 101)."""

    @pytest.mark.slow
    @pytest.mark.parametrize("spec, n", [("ut:3:101", 2), ("ut:4:101", 3)])
    def test_fifty_sessions(self, make_params, spec, n):
        for seed in range(50):
            exponents = seeded_exponents(seed, n + 1, 101)
            params = make_params(spec, exponents=exponents, seed=seed)
            transcript, keys = run_session(params)

            assert params.n == n
            assert len(keys) == n + 1
            assert len({key.key_bytes for key in keys}) == 1
            assert not keys[0].element.is_identity()
            assert keys[0].element == expected_session_key(params, exponents)
            assert len(transcript.messages) == n + 1

    def test_seeded_run(self, make_params):
        """n = 3 on UT(4, 101): four equal non-identity keys."""
        transcript, keys = run_session(make_params("ut:4:101", seed=7))

        assert len(keys) == 4
        assert len({key.hex() for key in keys}) == 1
        assert not keys[0].element.is_identity()


class TestRunSessionProtocol2:
    """Protocol II on Z_3 wr Z_3 (n = 2) and UT(5, 101) (n = 3)."""

    @pytest.mark.slow
    @pytest.mark.parametrize("spec, n, q", [("wreath:3", 2, 3), ("ut:5:101", 3, 101)])
    def test_fifty_sessions(self, make_params, spec, n, q):
        for seed in range(50):
            exponents = seeded_exponents(seed, n + 1, q)
            params = make_params(spec, protocol=ProtocolKind.II, exponents=exponents, seed=seed)
            _, keys = run_session(params)

            assert params.n == n
            assert len({key.key_bytes for key in keys}) == 1
            assert keys[0].element == expected_session_key(params, exponents)
            assert not keys[0].element.is_identity()


class TestRunSessionDeterminism:
    """Runs are reproducible and independent of the worker count."""

    def test_same_seed_same_transcript(self, make_params):
        first, _ = run_session(make_params("ut:4:101", seed=3))
        second, _ = run_session(make_params("ut:4:101", seed=3))
        assert TranscriptMapper.to_wire(first) == TranscriptMapper.to_wire(second)

    def test_workers_do_not_change_results(self, make_params):
        params = make_params("ut:5:101", protocol=ProtocolKind.II, seed=5)
        sequential = run_session(params, max_workers=1)
        threaded = run_session(params, max_workers=4)

        assert sequential[0] == threaded[0]
        assert [k.key_bytes for k in sequential[1]] == [k.key_bytes for k in threaded[1]]

    def test_transcript_is_replayable(self, make_params):
        params = make_params("wreath:3", seed=2)
        transcript, keys = run_session(params)
        states = setup_session(params)

        for state, key in zip(states, keys):
            assert derive_key(state, transcript) == key

    def test_transcript_holds_no_exponent_state(self, make_params):
        transcript, _ = run_session(make_params("ut:3:101", exponents=(17, 23, 29), seed=0))
        dumped = transcript.model_dump()
        assert set(dumped) == {"protocol", "platform", "n", "bases", "messages"}
