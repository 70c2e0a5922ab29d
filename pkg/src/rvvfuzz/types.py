"""Vector type model: element kinds, SEW/LMUL, ratios, and vsetvl arithmetic."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

SEWS = (8, 16, 32, 64)
FLOAT_SEWS = (16, 32, 64)
LMULS = (
    Fraction(1, 8),
    Fraction(1, 4),
    Fraction(1, 2),
    Fraction(1),
    Fraction(2),
    Fraction(4),
    Fraction(8),
)
BOOL_RATIOS = (1, 2, 4, 8, 16, 32, 64)

_LMUL_TO_TOKEN = {
    Fraction(1, 8): "mf8",
    Fraction(1, 4): "mf4",
    Fraction(1, 2): "mf2",
    Fraction(1): "m1",
    Fraction(2): "m2",
    Fraction(4): "m4",
    Fraction(8): "m8",
}
_TOKEN_TO_LMUL = {v: k for k, v in _LMUL_TO_TOKEN.items()}

_KIND_PREFIX = {"int": "i", "uint": "u", "float": "f"}
_PREFIX_KIND = {v: k for k, v in _KIND_PREFIX.items()}

_SCALAR_CTYPE = {
    ("int", 8): "int8_t",
    ("int", 16): "int16_t",
    ("int", 32): "int32_t",
    ("int", 64): "int64_t",
    ("uint", 8): "uint8_t",
    ("uint", 16): "uint16_t",
    ("uint", 32): "uint32_t",
    ("uint", 64): "uint64_t",
    ("float", 16): "_Float16",
    ("float", 32): "float",
    ("float", 64): "double",
}


class TypeError_(ValueError):
    """Raised for malformed or illegal vector type tokens."""


@dataclass(frozen=True)
class VectorType:
    """One RVV value type: element kind plus SEW/LMUL, or a bool ratio.

    Bool types store their ratio directly and carry no SEW/LMUL.  Tuple types
    (segment load/store operands) carry nf > 1.
    """

    kind: str  # "int" | "uint" | "float" | "bool"
    sew: int | None = None
    lmul: Fraction | None = None
    bool_ratio: int | None = None
    nf: int = 1

    def __post_init__(self) -> None:
        if self.kind == "bool":
            if self.bool_ratio not in BOOL_RATIOS:
                raise TypeError_(f"illegal bool ratio {self.bool_ratio}")
            if self.sew is not None or self.lmul is not None or self.nf != 1:
                raise TypeError_("bool types carry only a ratio")
            return
        if self.kind not in _KIND_PREFIX:
            raise TypeError_(f"unknown element kind {self.kind!r}")
        if self.sew not in SEWS:
            raise TypeError_(f"illegal SEW {self.sew}")
        if self.kind == "float" and self.sew not in FLOAT_SEWS:
            raise TypeError_(f"no {self.sew}-bit float vector type")
        if self.lmul not in LMULS:
            raise TypeError_(f"illegal LMUL {self.lmul}")
        ratio = Fraction(self.sew) / self.lmul
        if ratio.denominator != 1 or not 1 <= ratio <= 64:
            raise TypeError_(f"illegal SEW/LMUL combination {self.sew}/{self.lmul}")
        if self.nf != 1:
            if not 2 <= self.nf <= 8 or self.lmul * self.nf > 8:
                raise TypeError_(f"illegal tuple: lmul={self.lmul} nf={self.nf}")

    @property
    def is_bool(self) -> bool:
        return self.kind == "bool"

    @property
    def is_tuple(self) -> bool:
        return self.nf > 1

    @property
    def ratio(self) -> int:
        if self.is_bool:
            return self.bool_ratio  # type: ignore[return-value]
        return int(Fraction(self.sew) / self.lmul)

    @property
    def token(self) -> str:
        if self.is_bool:
            return f"b{self.bool_ratio}"
        base = f"{_KIND_PREFIX[self.kind]}{self.sew}{_LMUL_TO_TOKEN[self.lmul]}"
        return base if self.nf == 1 else f"{base}x{self.nf}"

    @property
    def cname(self) -> str:
        """The C type name, e.g. vint8m1_t, vbool8_t, vint8m1x2_t."""
        if self.is_bool:
            return f"vbool{self.bool_ratio}_t"
        base = f"v{self.kind}{self.sew}{_LMUL_TO_TOKEN[self.lmul]}"
        if self.nf > 1:
            base += f"x{self.nf}"
        return base + "_t"

    @property
    def elem_ctype(self) -> str:
        """The scalar C type of one element (bool elements have none)."""
        if self.is_bool:
            raise TypeError_("bool vectors have no element C type")
        return _SCALAR_CTYPE[(self.kind, self.sew)]

    def scalar(self, nf: int = 1) -> "VectorType":
        """Same kind/SEW/LMUL with a different tuple length."""
        return VectorType(self.kind, self.sew, self.lmul, nf=nf)

    @property
    def mask_type(self) -> "VectorType":
        """The bool type governing this type's lanes (same ratio)."""
        return VectorType("bool", bool_ratio=self.ratio)

    @classmethod
    def from_token(cls, token: str) -> "VectorType":
        sew, lmul, nf = None, None, 1
        t = token
        if t.startswith("b"):
            try:
                ratio = int(t[1:])
            except ValueError:
                raise TypeError_(f"malformed type token {token!r}") from None
            return cls("bool", bool_ratio=ratio)
        if t and t[0] in _PREFIX_KIND:
            kind = _PREFIX_KIND[t[0]]
            t = t[1:]
        else:
            raise TypeError_(f"malformed type token {token!r}")
        if "x" in t:
            t, _, nf_s = t.partition("x")
            try:
                nf = int(nf_s)
            except ValueError:
                raise TypeError_(f"malformed type token {token!r}") from None
        m_at = t.find("m")
        if m_at < 0:
            raise TypeError_(f"malformed type token {token!r}")
        try:
            sew = int(t[:m_at])
        except ValueError:
            raise TypeError_(f"malformed type token {token!r}") from None
        lmul = _TOKEN_TO_LMUL.get(t[m_at:])
        if lmul is None:
            raise TypeError_(f"malformed type token {token!r}")
        return cls(kind, sew, lmul, nf=nf)

    @classmethod
    def from_cname(cls, cname: str) -> "VectorType":
        if not (cname.startswith("v") and cname.endswith("_t")):
            raise TypeError_(f"not a vector C type: {cname!r}")
        body = cname[1:-2]
        for stem, kind in (("int", "i"), ("uint", "u"), ("float", "f"), ("bool", "b")):
            if body.startswith(stem):
                return cls.from_token(kind + body[len(stem):])
        raise TypeError_(f"not a vector C type: {cname!r}")


def lmul_token(lmul: Fraction) -> str:
    return _LMUL_TO_TOKEN[Fraction(lmul)]


def sew_lmul_of_token(token: str) -> tuple[int, Fraction]:
    """SEW and LMUL of an i/u/f/e-prefixed token ('e32m2' is the vsetvl form)."""
    t = token[1:] if token[:1] in ("i", "u", "f", "e") else ""
    if not t:
        raise TypeError_(f"malformed type token {token!r}")
    if "x" in t:
        t = t.partition("x")[0]
    m_at = t.find("m")
    if m_at < 0:
        raise TypeError_(f"malformed type token {token!r}")
    try:
        sew = int(t[:m_at])
    except ValueError:
        raise TypeError_(f"malformed type token {token!r}") from None
    lmul = _TOKEN_TO_LMUL.get(t[m_at:])
    if lmul is None or sew not in SEWS:
        raise TypeError_(f"malformed type token {token!r}")
    return sew, lmul


def ratio_of(t: "VectorType | str") -> int:
    """SEW/LMUL ratio of a vector type or type token; bool ratio for b-tokens."""
    if isinstance(t, VectorType):
        return t.ratio
    if t.startswith("b"):
        return VectorType.from_token(t).ratio
    sew, lmul = sew_lmul_of_token(t)
    r = Fraction(sew) / lmul
    if r.denominator != 1 or not 1 <= r <= 64:
        raise TypeError_(f"illegal SEW/LMUL combination in {t!r}")
    return int(r)


@dataclass(frozen=True)
class MachineParams:
    """Implementation constants: bits per vector register and max element width."""

    vlen: int = 128
    elen: int = 64

    def __post_init__(self) -> None:
        if self.vlen < 64 or self.vlen & (self.vlen - 1):
            raise TypeError_(f"vlen must be a power of two >= 64, got {self.vlen}")
        if self.elen > self.vlen:
            raise TypeError_("elen cannot exceed vlen")

    def vlmax(self, t: "VectorType | str") -> int:
        """VLEN * LMUL / SEW; equivalently VLEN / ratio."""
        r = ratio_of(t)
        if self.vlen < r:
            raise TypeError_(f"vlmax < 1 for ratio {r} at VLEN {self.vlen}")
        return self.vlen // r

    def vsetvl(self, avl: int, t: "VectorType | str") -> int:
        if avl < 0:
            raise TypeError_(f"negative avl {avl}")
        return min(avl, self.vlmax(t))

    def vsetvlmax(self, t: "VectorType | str") -> int:
        return self.vlmax(t)


def all_value_types(elen: int = 64) -> list[VectorType]:
    """Every legal non-bool, non-tuple vector type under the given ELEN."""
    out = []
    for kind in ("int", "uint", "float"):
        sews = FLOAT_SEWS if kind == "float" else SEWS
        for sew in sews:
            for lmul in LMULS:
                r = Fraction(sew) / lmul
                if r.denominator == 1 and 1 <= r <= elen:
                    out.append(VectorType(kind, sew, lmul))
    return out


def all_tuple_types(elen: int = 64) -> list[VectorType]:
    """Every legal tuple (segment) type: LMUL * NF <= 8, NF in 2..8."""
    out = []
    for base in all_value_types(elen):
        for nf in range(2, 9):
            if base.lmul * nf <= 8:
                out.append(base.scalar(nf=nf))
    return out


def all_bool_types() -> list[VectorType]:
    return [VectorType("bool", bool_ratio=r) for r in BOOL_RATIOS]
