"""Shared fixtures: the reference instance and random decodable instances."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import pytest

# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

from sumrankdec import example_case
from sumrankdec.code import InterleavedCode, LinearCode, min_sum_rank_distance, random_code
from sumrankdec.gf import FieldTower
from sumrankdec.linalg import Matrix
from sumrankdec.sumrank import ErrorModel, LengthPartition, random_profile, sample_error


@pytest.fixture(scope="session")
def ref():
    return example_case.load()


@pytest.fixture(scope="session")
def ref_tower(ref):
    return ref.tower


def code_with_distance(
    tower: FieldTower,
    partition: LengthPartition,
    k: int,
    rng: np.random.Generator,
    d_min: int,
    tries: int = 100,
    budget: int = 10**6,
) -> LinearCode:
    """Random code redrawn until its brute-forced distance reaches d_min."""
    best = None
    for _ in range(tries):
        code = random_code(tower, partition, k, rng=rng)
        d = min_sum_rank_distance(code, budget=budget)
        if d >= d_min:
            code.d = d
            return code
        best = d if best is None else max(best, d)
    raise RuntimeError(f"no code with d >= {d_min} in {tries} draws (best {best})")


@dataclass
class Instance:
    """A forward-constructed decoding instance with known ground truth."""

    tower: FieldTower
    partition: LengthPartition
    code: LinearCode
    icode: InterleavedCode
    em: ErrorModel
    C: Matrix
    E: Matrix
    Y: Matrix

    @property
    def t(self) -> int:
        return self.em.t


def make_instance(
    code: LinearCode,
    s: int,
    rng: np.random.Generator,
    t: int | None = None,
    profile=None,
    require_full_rank: bool = True,
) -> Instance:
    tower, partition = code.tower, code.partition
    if profile is None:
        profile = random_profile(rng, tower, partition, t, s)
    em = sample_error(tower, partition, profile, s, require_full_rank=require_full_rank, rng=rng)
    icode = InterleavedCode(code, s)
    msg = Matrix.random(tower.ext_field, s, code.k, rng)
    C = icode.encode(msg)
    return Instance(
        tower=tower,
        partition=partition,
        code=code,
        icode=icode,
        em=em,
        C=C,
        E=em.E,
        Y=C + em.E,
    )
