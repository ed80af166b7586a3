"""Microlocal spectrum condition verdicts for wavefront estimates."""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Literal

import numpy as np
from pydantic import BaseModel, Field

from warpkit.microloc.wavefront import WavefrontEstimate
from warpkit.musc.feasibility import FeasibilityWitness, SearchSpec, gamma_member
from warpkit.musc.graph import CovectorConfiguration

logger = logging.getLogger(__name__)


class TupleVerdict(BaseModel):
    configuration: CovectorConfiguration
    result: FeasibilityWitness


class MuscReport(BaseModel):
    verdict: Literal["PASS", "FAIL", "UNDECIDED"]
    tuples: list[TupleVerdict] = Field(default_factory=list)
    counterexamples: list[int] = Field(default_factory=list, description="Indices of not-instantiable tuples")
    undecided: list[int] = Field(default_factory=list)


def tuples_from_two_point_wavefront(wf: WavefrontEstimate) -> list[CovectorConfiguration]:
    """(y, zeta; 0, -zeta) for every singular entry (y, zeta) of a difference-variable two-point estimate."""
    tuples = []
    for e in wf.singular():
        y = np.asarray(e.base_point, dtype=float)
        zeta = np.asarray(e.direction, dtype=float)
        tuples.append(CovectorConfiguration.from_arrays([y, np.zeros_like(y)], [zeta, -zeta]))
    return tuples


def check_musc(configurations: list[CovectorConfiguration], search: SearchSpec | None = None) -> MuscReport:
    """PASS when every singular tuple lies in Gamma_n; FAIL lists the tuples that do not."""
    search = search or SearchSpec()
    with ThreadPoolExecutor(max_workers=search.workers) as pool:
        results = list(pool.map(lambda c: gamma_member(c, search), configurations))
    tuples = [TupleVerdict(configuration=c, result=r) for c, r in zip(configurations, results, strict=True)]
    counterexamples = [i for i, r in enumerate(results) if r.verdict == "not-instantiable"]
    undecided = [i for i, r in enumerate(results) if r.verdict == "undecided"]
    verdict = "FAIL" if counterexamples else "UNDECIDED" if undecided else "PASS"
    logger.info(f"muSC check over {len(tuples)} tuples: {verdict}")
    return MuscReport(verdict=verdict, tuples=tuples, counterexamples=counterexamples, undecided=undecided)
