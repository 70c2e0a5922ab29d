"""Randomized vector-register allocation over a selected operation sequence.

Walks the sequence once, binding every vector parameter and return value to
a virtual register.  A coin flip (or an empty table bucket) forces a fresh
register; fresh parameter registers are memory-backed and later require one
load intrinsic plus one global array each.  Reuse draws uniformly from the
active registers of the exact type, which is what produces read/write
dependency chains between operations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .intrinsics import IntrinsicDef
from .selection import is_quarantined
from .semantics import wants_synth_index
from .types import VectorType


@dataclass
class VReg:
    id: int
    vtype: VectorType
    from_memory: bool = False
    quarantined: bool = False

    @property
    def name(self) -> str:
        return f"vreg_{self.id}_mem" if self.from_memory else f"vreg_{self.id}"


@dataclass(frozen=True)
class SynthIndex:
    """A vector operand synthesized inline from vid so indices stay in [0, vl)."""

    vtype: VectorType


@dataclass
class OpInstance:
    def_: IntrinsicDef
    bound_params: list = field(default_factory=list)  # VReg | SynthIndex | None
    bound_return: VReg | None = None

    @property
    def reads(self) -> list[VReg]:
        return [b for b in self.bound_params if isinstance(b, VReg)]


class VRegTable:
    """type token -> active registers of that exact type."""

    def __init__(self) -> None:
        self._buckets: dict[str, list[VReg]] = {}

    def bucket(self, vtype: VectorType) -> list[VReg]:
        return self._buckets.setdefault(vtype.token, [])

    def append(self, reg: VReg) -> None:
        assert not reg.quarantined
        self.bucket(reg.vtype).append(reg)

    def active(self) -> list[VReg]:
        return [r for regs in self._buckets.values() for r in regs]


def coin_flip(rng: random.Random, bias: float = 0.5) -> bool:
    return rng.random() < bias


def allocate(
    ops: list[OpInstance],
    rng: random.Random,
    coin_bias: float = 0.5,
    table: VRegTable | None = None,
) -> list[OpInstance]:
    if table is None:
        table = VRegTable()
    next_id = max((r.id for r in table.active()), default=-1) + 1

    def fresh(vtype: VectorType, from_memory: bool, quarantined: bool = False) -> VReg:
        nonlocal next_id
        reg = VReg(next_id, vtype, from_memory, quarantined)
        next_id += 1
        return reg

    for op in ops:
        assert not op.bound_params and op.bound_return is None
        for p in op.def_.params:
            if p.vtype is None:
                op.bound_params.append(None)  # scalar/CSR slots filled by codegen
                continue
            if wants_synth_index(op.def_, p.name):
                op.bound_params.append(SynthIndex(p.vtype))
                continue
            bucket = table.bucket(p.vtype)
            if coin_flip(rng, coin_bias) or not bucket:
                reg = fresh(p.vtype, from_memory=True)
                table.append(reg)
            else:
                reg = bucket[rng.randrange(len(bucket))]
            op.bound_params.append(reg)

        ret_t = op.def_.ret_vtype
        if ret_t is None:
            continue
        if is_quarantined(op.def_):
            op.bound_return = fresh(ret_t, from_memory=False, quarantined=True)
            continue
        bucket = table.bucket(ret_t)
        if coin_flip(rng, coin_bias) or not bucket:
            reg = fresh(ret_t, from_memory=False)
            table.append(reg)
        else:
            reg = bucket[rng.randrange(len(bucket))]
        op.bound_return = reg

    return ops


def scan_dependencies(ops: list[OpInstance]) -> set[str]:
    """Which of the four dependency scenarios the bound sequence realizes."""
    accesses: dict[int, list[tuple[int, str]]] = {}
    for i, op in enumerate(ops):
        for reg in op.reads:
            accesses.setdefault(reg.id, []).append((i, "read"))
        if op.bound_return is not None:
            accesses.setdefault(op.bound_return.id, []).append((i, "write"))
    found: set[str] = set()
    for events in accesses.values():
        for a in range(len(events)):
            for b in range(a + 1, len(events)):
                (i, ka), (j, kb) = events[a], events[b]
                if i == j:
                    continue
                found.add(f"{ka}-{kb}")
    return found


def use_define_violations(ops: list[OpInstance]) -> list[str]:
    """Registers read before any definition (load for _mem, else a return)."""
    defined: set[int] = set()
    problems: list[str] = []
    for i, op in enumerate(ops):
        for reg in op.reads:
            if reg.from_memory:
                defined.add(reg.id)  # backing load precedes first use
            elif reg.id not in defined:
                problems.append(f"op {i} reads {reg.name} before definition")
        if op.bound_return is not None:
            defined.add(op.bound_return.id)
    return problems
