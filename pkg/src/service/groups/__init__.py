"""
Platform Groups Module.

Exact finite-group arithmetic for the shipped platform families:
- UnitriangularGroup: UT(m, q), class m - 1
- WreathGroup: Z_p wr Z_p, class p, not (p - 1)-Engel
"""

from src.service.groups.base import (
    ElementDecodeError,
    GroupElement,
    PlatformError,
    PlatformGroup,
    PlatformMismatchError,
)
from src.service.groups.modular import Modulus, Residue
from src.service.groups.platform import (
    build_platform,
    decode_platform_header,
    deserialize,
    element_size_for,
    encode_platform_header,
    group_identity,
    inverse,
    multiply,
    parse_platform,
    power,
    serialize,
)
from src.service.groups.unitriangular import UnitriangularGroup, UTMatrix
from src.service.groups.wreath import WreathElement, WreathGroup

__all__ = [
    'ElementDecodeError',
    'GroupElement',
    'Modulus',
    'PlatformError',
    'PlatformGroup',
    'PlatformMismatchError',
    'Residue',
    'UTMatrix',
    'UnitriangularGroup',
    'WreathElement',
    'WreathGroup',
    'build_platform',
    'decode_platform_header',
    'deserialize',
    'element_size_for',
    'encode_platform_header',
    'group_identity',
    'inverse',
    'multiply',
    'parse_platform',
    'power',
    'serialize',
]
