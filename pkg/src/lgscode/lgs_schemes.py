"""LGS-McEliece and LGS-Niederreiter encryption.

The secret code is a λ-Gabidulin code ``G_lambda(g, k)`` with ``n = m``; the
public code is a random F_q-subcode ``D`` of dimension ``k'`` (not a multiple
of ``m``) of its expansion in a secret basis ``B``. McEliece publishes a basis
of the matrix code ``phi_B^mat(D)``; Niederreiter publishes a systematic
parity-check matrix of ``phi_B^vec(D)``.
"""

from __future__ import annotations

import json
import math
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import rank_linalg as rl
from ._rand import as_rng, fresh_seed
from .field_tower import FieldTower, QBasis, contract_mat, expand_mat, field_for_q, random_basis
from .gabidulin import (
    GabCode,
    LambdaGabCode,
    expanded_generator,
    lambda_decode,
    random_support,
    sample_error_matrix,
    sample_lambda,
)
from .subcodes import filtered_random_subcode, random_subcode

_INT = np.int64
MAGIC = b"LGS1"
VERSION = 1
VARIANT_MCE_PK = 0x01
VARIANT_NIED_PK = 0x02
VARIANT_SK = 0x03
VARIANT_MCE_CT = 0x11
VARIANT_NIED_CT = 0x12


# -- parameters ---------------------------------------------------------------


@dataclass(frozen=True)
class Params:
    q: int
    m: int
    k: int
    k_prime: int
    delta: int = 1
    n: int | None = None
    name: str = ""

    def __post_init__(self) -> None:
        if self.n is None:
            object.__setattr__(self, "n", self.m)

    @property
    def t_pub(self) -> int:
        return (self.n - self.k) // (2 * self.delta)

    def validate(self) -> None:
        if self.n != self.m:
            raise ValueError("the LGS schemes need n = m")
        if not 1 <= self.k < self.n:
            raise ValueError(f"need 1 <= k < n, got k={self.k}")
        if not 1 <= self.k_prime < self.k * self.m:
            raise ValueError(f"need 1 <= k' < km = {self.k * self.m}")
        if self.k_prime % self.m == 0:
            raise ValueError(f"k'={self.k_prime} must not be divisible by m={self.m}")
        if not 1 <= self.delta <= self.n:
            raise ValueError(f"delta={self.delta} out of range")

    def to_dict(self) -> dict:
        return {"q": self.q, "delta": self.delta, "m": self.m, "k": self.k, "k_prime": self.k_prime}


# (q, delta, m = n, k, k', t_pub), rows of the published parameter tables
_TABLE = {
    "LGS-128-a": (2, 1, 38, 30, 1125, 4),
    "LGS-128-b": (8, 1, 20, 14, 270, 3),
    "LGS-128-c": (2, 1, 34, 24, 800, 5),
    "LGS-128-d": (16, 1, 17, 11, 183, 3),
    "LGS-128-e": (2, 1, 32, 18, 564, 7),
    "LGS-128-f": (2, 2, 46, 30, 1360, 4),
    "LGS-128-g": (8, 2, 30, 18, 528, 3),
    "LGS-192-a": (8, 1, 27, 21, 557, 3),
    "LGS-192-b": (16, 1, 23, 17, 381, 3),
    "LGS-192-c": (2, 1, 39, 23, 880, 8),
    "LGS-192-d": (16, 1, 21, 11, 221, 5),
    "LGS-192-e": (2, 2, 62, 46, 2822, 4),
    "LGS-192-f": (8, 2, 37, 25, 910, 3),
    "LGS-256-a": (2, 1, 59, 49, 2881, 5),
    "LGS-256-b": (2, 1, 47, 31, 1434, 8),
    "LGS-256-c": (2, 1, 49, 35, 1695, 7),
    "LGS-256-d": (8, 1, 27, 17, 447, 5),
    "LGS-256-e": (16, 1, 24, 14, 324, 5),
    "LGS-256-f": (8, 2, 44, 32, 1388, 3),
}

REGISTRY: dict[str, Params] = {
    name: Params(q=q, m=m, k=k, k_prime=kp, delta=dl, name=name)
    for name, (q, dl, m, k, kp, _t) in _TABLE.items()
}
TABLE_T_PUB = {name: row[5] for name, row in _TABLE.items()}


def load_params(name: str | None = None, config: str | Path | dict | None = None) -> Params:
    """Registry entry ``name``, with fields overridden by a JSON config.

    The config holds any of ``q, delta, m, k, k_prime`` (a path or a dict).
    """
    base = REGISTRY[name].to_dict() if name else {}
    if config is not None:
        if not isinstance(config, dict):
            config = json.loads(Path(config).read_text())
        unknown = set(config) - {"q", "delta", "m", "k", "k_prime"}
        if unknown:
            raise ValueError(f"unknown parameter keys: {sorted(unknown)}")
        base.update(config)
    missing = {"q", "m", "k", "k_prime"} - set(base)
    if missing:
        raise ValueError(f"missing parameters: {sorted(missing)}")
    return Params(
        q=int(base["q"]),
        m=int(base["m"]),
        k=int(base["k"]),
        k_prime=int(base["k_prime"]),
        delta=int(base.get("delta", 1)),
        name=name or "",
    )


def _log2q(q: int) -> float:
    return math.log2(q)


def _bits(count: int, q: int) -> int:
    if q & (q - 1) == 0:
        return count * (q.bit_length() - 1)
    return math.ceil(count * _log2q(q))


def sizes(params: Params) -> dict:
    """Public-key and ciphertext sizes from ``k'(mn-k') log2 q`` and ``(mn-k') log2 q`` bits."""
    mn = params.m * params.n
    red = mn - params.k_prime
    pk_bits = _bits(params.k_prime * red, params.q)
    ct_bits = _bits(red, params.q)
    pk_bytes = -(-pk_bits // 8)
    ct_bytes = -(-ct_bits // 8)
    return {
        "pk_bits": pk_bits,
        "pk_bytes": pk_bytes,
        "pk_kB": pk_bytes / 1000,
        "ct_bits": ct_bits,
        "ct_bytes": ct_bytes,
    }


# -- keys -----------------------------------------------------------------------


@dataclass(frozen=True)
class SecretKey:
    field: FieldTower
    basis: QBasis
    g: tuple[int, ...]
    lam: tuple[int, ...]
    k: int

    @property
    def code(self) -> LambdaGabCode:
        return LambdaGabCode(GabCode(self.field, self.g, self.k), self.lam)


@dataclass(frozen=True)
class PublicKeyMcE:
    field: FieldTower
    gens: np.ndarray  # (k', m, n)
    t_pub: int

    @property
    def k_prime(self) -> int:
        return self.gens.shape[0]


@dataclass(frozen=True)
class PublicKeyNied:
    """Systematic parity-check matrix: ``h_matrix[:, pivots]`` is the identity.

    Key files store only the non-identity block plus an ``mn``-bit pivot mask.
    """

    field: FieldTower
    h_matrix: np.ndarray  # (mn - k', mn)
    pivots: tuple[int, ...]
    t_pub: int
    m: int

    @property
    def k_prime(self) -> int:
        return self.h_matrix.shape[1] - self.h_matrix.shape[0]


@dataclass(frozen=True)
class KeyPair:
    public: PublicKeyMcE | PublicKeyNied
    secret: SecretKey
    subcode_gen: np.ndarray  # k' x mn generator of phi_B^vec(D)
    retries: int


def _secret_code(params: Params, fld: FieldTower, seed) -> SecretKey:
    B = random_basis(fld, (seed, "basis"))
    g = random_support(fld, params.n, (seed, "support"))
    lam = sample_lambda(fld, params.n, params.delta, (seed, "lambda"))
    return SecretKey(fld, B, g, lam, params.k)


def keygen(params: Params, seed=None, variant: str = "mce", filtered: bool = True, budget: int = 16) -> KeyPair:
    """Key generation (both variants share every step up to the public key).

    Args:
        variant: ``"mce"`` or ``"nied"``.
        filtered: redraw the subcode until both stabilizers of its matrix form
            are trivial.
    """
    params.validate()
    if variant not in ("mce", "nied"):
        raise ValueError(f"unknown variant {variant!r}")
    if seed is None:
        seed = fresh_seed()
    fld = field_for_q(params.q, params.m)
    sk = _secret_code(params, fld, seed)
    if sk.code.delta != params.delta:
        raise RuntimeError("sampled multipliers do not have the requested delta")
    Gvec = expanded_generator(sk.code, sk.basis)
    F = fld.base
    if filtered:
        sub = filtered_random_subcode(F, Gvec, params.k_prime, params.m, params.n, (seed, "subcode"), budget)
    else:
        sub = random_subcode(F, Gvec, params.k_prime, (seed, "subcode"), params.m)
    if variant == "mce":
        pk = PublicKeyMcE(fld, rl.fold(sub.gen, params.m), params.t_pub)
    else:
        pk = _nied_public(fld, sub.gen, params.t_pub, params.m)
    return KeyPair(pk, sk, sub.gen, sub.retries)


def _nied_public(fld: FieldTower, gen: np.ndarray, t_pub: int, m: int) -> PublicKeyNied:
    F = fld.base
    H = rl.kernel_basis(F, gen)
    R, piv = rl.rref(F, H)
    return PublicKeyNied(fld, R, tuple(piv), t_pub, m)


# -- McEliece -----------------------------------------------------------------


def encrypt_mce(pk: PublicKeyMcE, x, seed=None, error=None) -> np.ndarray:
    """``Y = sum x_i G_i + E`` with ``rk(E) = t_pub``.

    Args:
        error: explicit ``m x n`` error matrix (test hook); sampled otherwise.
    """
    F = pk.field.base
    x = np.asarray(x, dtype=_INT)
    if x.shape != (pk.k_prime,):
        raise ValueError(f"plaintext must have length k'={pk.k_prime}")
    _, m, n = pk.gens.shape
    cw = F.matmul(x, pk.gens.reshape(pk.k_prime, m * n)).reshape(m, n)
    if error is None:
        error = sample_error_matrix(F, m, n, pk.t_pub, as_rng(seed, "error"))
    return F.add(cw, np.asarray(error, dtype=_INT))


def decrypt_mce(sk: SecretKey, pk_gens, Y) -> np.ndarray:
    """Contract with ``B``, λ-decode, re-expand, and solve ``C = sum x_i G_i``.

    Raises:
        DecodeFailure: if the error exceeds the decoding radius.
        NoSolutionError: if the decoded codeword is not in the public code.
    """
    F = sk.field.base
    gens = np.asarray(pk_gens, dtype=_INT)
    y = contract_mat(sk.basis, Y)
    c, _ = lambda_decode(sk.code, y)
    C = expand_mat(sk.basis, c)
    return rl.solve_left(F, rl.unfold(gens), rl.unfold(C))


# -- Niederreiter -------------------------------------------------------------


def encrypt_nied(pk: PublicKeyNied, e) -> np.ndarray:
    """Syndrome ``s = e H^T``; rejects ``e`` with ``rk(Fold(e)) > t_pub``."""
    F = pk.field.base
    e = np.asarray(e, dtype=_INT)
    if e.shape != (pk.h_matrix.shape[1],):
        raise ValueError(f"error vector must have length mn={pk.h_matrix.shape[1]}")
    if rl.rank(F, rl.fold(e, pk.m)) > pk.t_pub:
        raise ValueError(f"rk(Fold(e)) exceeds t_pub={pk.t_pub}")
    return F.matmul(pk.h_matrix, e)


def syndrome_preimage(pk: PublicKeyNied, s) -> np.ndarray:
    """Canonical ``y`` with ``y H^T = s``: ``s`` on the pivot columns, zero elsewhere."""
    s = np.asarray(s, dtype=_INT)
    y = np.zeros(pk.h_matrix.shape[1], dtype=_INT)
    y[list(pk.pivots)] = s
    return y


def decrypt_nied(sk: SecretKey, pk: PublicKeyNied, s) -> np.ndarray:
    """Recover ``e`` from its syndrome (canonical preimage, contract, λ-decode)."""
    y = syndrome_preimage(pk, s)
    yw = contract_mat(sk.basis, rl.fold(y, pk.m))
    _, e = lambda_decode(sk.code, yw)
    return rl.unfold(expand_mat(sk.basis, e))


def sample_plaintext_error(pk: PublicKeyNied, seed=None) -> np.ndarray:
    """Random ``e`` with ``rk(Fold(e)) = t_pub`` (Niederreiter plaintext)."""
    F = pk.field.base
    mn = pk.h_matrix.shape[1]
    E = sample_error_matrix(F, pk.m, mn // pk.m, pk.t_pub, as_rng(seed, "nied-error"))
    return rl.unfold(E)


# -- serialisation -----------------------------------------------------------


def _header(variant: int, fld: FieldTower) -> bytes:
    return MAGIC + bytes([VERSION, variant]) + fld.descriptor()


def _read_header(data: bytes, expected: int | None = None) -> tuple[int, FieldTower, int]:
    if data[:4] != MAGIC:
        raise ValueError("not an LGS file (bad magic)")
    if data[4] != VERSION:
        raise ValueError(f"unsupported version {data[4]}")
    variant = data[5]
    if expected is not None and variant != expected:
        raise ValueError(f"unexpected file variant 0x{variant:02x}")
    fld, off = FieldTower.from_descriptor(data, 6)
    return variant, fld, off


def _words_matrix(fld: FieldTower, words) -> np.ndarray:
    return fld.coeff_matrix(words)


def serialize_public(pk: PublicKeyMcE | PublicKeyNied) -> bytes:
    F = pk.field.base
    if isinstance(pk, PublicKeyMcE):
        kp, m, n = pk.gens.shape
        out = _header(VARIANT_MCE_PK, pk.field) + struct.pack("<HIHH", pk.t_pub, kp, m, n)
        return out + rl.serialize_matrix(F, rl.unfold(pk.gens))
    red, mn = pk.h_matrix.shape
    free = [c for c in range(mn) if c not in set(pk.pivots)]
    mask = np.zeros(mn, dtype=np.uint8)
    mask[list(pk.pivots)] = 1
    out = _header(VARIANT_NIED_PK, pk.field) + struct.pack("<HHI", pk.t_pub, pk.m, mn)
    out += np.packbits(mask, bitorder="little").tobytes()
    return out + rl.serialize_matrix(F, pk.h_matrix[:, free])


def deserialize_public(data: bytes) -> PublicKeyMcE | PublicKeyNied:
    variant, fld, off = _read_header(data)
    F = fld.base
    if variant == VARIANT_MCE_PK:
        t_pub, kp, m, n = struct.unpack_from("<HIHH", data, off)
        M, _ = rl.deserialize_matrix(F, data, off + 10)
        return PublicKeyMcE(fld, rl.fold(M, m).reshape(kp, m, n), t_pub)
    if variant == VARIANT_NIED_PK:
        t_pub, m, mn = struct.unpack_from("<HHI", data, off)
        off += 8
        nbytes = -(-mn // 8)
        mask = np.unpackbits(np.frombuffer(data[off : off + nbytes], dtype=np.uint8), bitorder="little")
        piv = tuple(int(c) for c in np.flatnonzero(mask[:mn]))
        off += nbytes
        block, _ = rl.deserialize_matrix(F, data, off)
        npiv = len(piv)
        H = np.zeros((npiv, mn), dtype=_INT)
        free = [c for c in range(mn) if c not in set(piv)]
        H[:, list(piv)] = np.eye(npiv, dtype=_INT)
        H[:, free] = block
        return PublicKeyNied(fld, H, tuple(piv), t_pub, m)
    raise ValueError(f"not a public key file (variant 0x{variant:02x})")


def serialize_secret(sk: SecretKey) -> bytes:
    F = sk.field.base
    out = _header(VARIANT_SK, sk.field) + struct.pack("<HH", sk.k, len(sk.g))
    for words in (sk.basis.elements, sk.g, sk.lam):
        out += rl.serialize_matrix(F, _words_matrix(sk.field, words))
    return out


def deserialize_secret(data: bytes) -> SecretKey:
    _, fld, off = _read_header(data, VARIANT_SK)
    F = fld.base
    k, _n = struct.unpack_from("<HH", data, off)
    off += 4
    parts = []
    for _ in range(3):
        M, off = rl.deserialize_matrix(F, data, off)
        parts.append(fld.from_coeff_matrix(M))
    B = QBasis.from_elements(fld, parts[0])
    return SecretKey(fld, B, tuple(parts[1]), tuple(parts[2]), k)


def serialize_ciphertext(fld: FieldTower, ct, variant: str) -> bytes:
    F = fld.base
    ct = np.asarray(ct, dtype=_INT)
    if variant == "mce":
        return _header(VARIANT_MCE_CT, fld) + rl.serialize_matrix(F, ct)
    return _header(VARIANT_NIED_CT, fld) + rl.serialize_matrix(F, ct.reshape(1, -1))


def deserialize_ciphertext(data: bytes) -> tuple[str, np.ndarray]:
    variant, fld, off = _read_header(data)
    M, _ = rl.deserialize_matrix(fld.base, data, off)
    if variant == VARIANT_MCE_CT:
        return "mce", M
    if variant == VARIANT_NIED_CT:
        return "nied", M.reshape(-1)
    raise ValueError(f"not a ciphertext file (variant 0x{variant:02x})")


def hexdump(data: bytes, width: int = 16) -> str:
    lines = []
    for off in range(0, len(data), width):
        chunk = data[off : off + width]
        hx = " ".join(f"{b:02x}" for b in chunk)
        asc = "".join(chr(b) if 32 <= b < 127 else "." for b in chunk)
        lines.append(f"{off:08x}  {hx:<{3 * width}} {asc}")
    return "\n".join(lines)
