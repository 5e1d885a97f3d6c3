from .models import (
    AttackReport,
    BroadcastMessage,
    CertificateMode,
    CertificateStatus,
    ClassCertificate,
    EngelCertificate,
    EngelVerdict,
    IdentityCheck,
    IdentitySuiteReport,
    PlatformDescriptor,
    PlatformFamily,
    ProtocolKind,
    Transcript,
    broadcast_base_indices,
    public_base_count,
)

__all__ = [
    'AttackReport',
    'BroadcastMessage',
    'CertificateMode',
    'CertificateStatus',
    'ClassCertificate',
    'EngelCertificate',
    'EngelVerdict',
    'IdentityCheck',
    'IdentitySuiteReport',
    'PlatformDescriptor',
    'PlatformFamily',
    'ProtocolKind',
    'Transcript',
    'broadcast_base_indices',
    'public_base_count',
]
