"""End-to-end wiring: listing -> candidate pools -> cases -> campaign."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .catalog import build_listing
from .codegen import CaseIR, ProgramCase, build_case, emit_case
from .difftest import CompilerConfig, compare, report, run_case
from .intrinsics import IntrinsicDef, parse_definitions
from .oracle import OracleUnsupported, evaluate
from .scheduling import MODES
from .selection import SelectionError, filter_candidates


class SelfCheckError(AssertionError):
    """The reference evaluator disagreed with itself: a generator bug."""


@dataclass
class RunConfig:
    listing: str | None = None  # path; None uses the built-in catalog
    vlen: int = 128
    elen: int = 64
    ratio_type: str | None = None
    seq_len: object = 10  # int or (lo, hi)
    data_len: object = 10
    seeds: tuple[int, int] = (0, 0)  # inclusive
    modes: tuple[str, ...] = MODES
    compilers: str | None = None
    out_dir: str = "rvvfuzz-out"
    self_check: bool = False
    coin_bias: float = 0.5

    def seed_range(self) -> range:
        lo, hi = self.seeds
        if hi < lo:
            raise ValueError(f"empty seed range {lo}..{hi}")
        return range(lo, hi + 1)


class _LazyPools(dict):
    """Per-ratio candidate pools, filtered on first use and then cached."""

    def __init__(self, defs):
        super().__init__()
        self._defs = defs

    def __contains__(self, ratio) -> bool:
        return True

    def __getitem__(self, ratio):
        if not super().__contains__(ratio):
            super().__setitem__(ratio, filter_candidates(self._defs, ratio))
        return super().__getitem__(ratio)


class Generator:
    """Caches parsed definitions and per-ratio candidate pools."""

    def __init__(self, listing_text: str, *, seq_len=10, data_len=10,
                 ratio_type: str | None = None, coin_bias: float = 0.5):
        self.listing_text = listing_text
        self.listing_sha = hashlib.sha256(listing_text.encode()).hexdigest()
        self.defs: list[IntrinsicDef] = parse_definitions(listing_text)
        self.listed = {d.full_name for d in self.defs}
        self.seq_len = seq_len
        self.data_len = data_len
        self.ratio_type = ratio_type
        self.coin_bias = coin_bias
        self._pools = _LazyPools(self.defs)

    @classmethod
    def from_config(cls, cfg: RunConfig) -> "Generator":
        if cfg.listing:
            text = Path(cfg.listing).read_text(encoding="utf-8")
        else:
            text = build_listing()
        return cls(text, seq_len=cfg.seq_len, data_len=cfg.data_len,
                   ratio_type=cfg.ratio_type, coin_bias=cfg.coin_bias)

    def pool(self, ratio: int):
        return self._pools[ratio]

    def build(self, seed: int, **overrides) -> CaseIR:
        kw = dict(
            seq_len=self.seq_len,
            data_len=self.data_len,
            ratio_token=self.ratio_type,
            coin_bias=self.coin_bias,
        )
        kw.update(overrides)
        return build_case(
            self.defs, seed, pools=self._pools, listed=self.listed,
            snapshot_extra={"listing_sha256": self.listing_sha}, **kw,
        )

    def case(self, seed: int, mode: str, **overrides) -> ProgramCase:
        return emit_case(self.build(seed, **overrides), mode)

    def cases(self, seed: int, modes=MODES, **overrides) -> list[ProgramCase]:
        ir = self.build(seed, **overrides)
        return [emit_case(ir, m) for m in modes]


def self_check(cases: list[ProgramCase], vlen: int) -> bool:
    """Evaluator cross-checks for one seed's variants.

    Returns False when the case is outside the evaluator subset (the caller
    then relies on differential testing alone); raises on real divergence.
    """
    try:
        outputs = {c.mode: evaluate(c, vlen=vlen, poison_byte=0x00) for c in cases}
        poisoned = {c.mode: evaluate(c, vlen=vlen, poison_byte=0xFF) for c in cases}
    except OracleUnsupported:
        return False
    if len(set(outputs.values())) != 1:
        raise SelfCheckError(f"seed {cases[0].seed}: variants disagree under evaluation")
    if outputs != poisoned:
        raise SelfCheckError(f"seed {cases[0].seed}: agnostic value reached a print")
    return True


def write_case(case: ProgramCase, out_dir: str | Path) -> tuple[Path, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    src = out / f"{case.name}.c"
    src.write_text(case.source, encoding="utf-8")
    sidecar = out / f"{case.name}.json"
    meta = {
        "snapshot": case.snapshot,
        "manifest_len": len(case.manifest),
        "source_sha256": hashlib.sha256(case.source.encode()).hexdigest(),
    }
    sidecar.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return src, sidecar


def fuzz_seed(
    gen: Generator,
    seed: int,
    configs: list[CompilerConfig],
    workdir: str | Path,
    modes=MODES,
    vlen: int = 128,
    do_self_check: bool = False,
):
    """Generate all variants of one seed, run the matrix, classify."""
    cases = gen.cases(seed, modes=modes)
    if do_self_check:
        self_check(cases, vlen)
    outcomes = []
    for case in cases:
        write_case(case, workdir)
        outcomes.extend(run_case(case, configs, workdir))
    return compare(outcomes), outcomes
