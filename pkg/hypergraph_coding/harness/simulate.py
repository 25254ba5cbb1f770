"""End-to-end i.i.d. simulation of the modular and polar codecs."""

import time
from pathlib import Path
from typing import List, Literal, Optional

import numpy as np
import structlog
from pydantic import BaseModel, ConfigDict, Field, model_validator

from hypergraph_coding.codecs.modular import modular_pipeline
from hypergraph_coding.codecs.polar import block_exponent, design_from_instance, run_polar_blocks
from hypergraph_coding.core.errors import ConfigurationError, PreconditionViolated
from hypergraph_coding.core.model import ErrorReport, ProblemInstance, sample_pairs
from hypergraph_coding.core.settings import settings
from hypergraph_coding.entropy import solve_entropy
from hypergraph_coding.hypergraph import build_hypergraph, unique_clustering
from hypergraph_coding.instance_io import resolve_instance

logger = structlog.get_logger(__name__)

SIMULATION_CSV_COLUMNS = [
    "codec",
    "blocklength",
    "blocks",
    "seed",
    "epsilon",
    "theoretical_rate",
    "empirical_rate",
    "n",
    "violations",
    "p_avg",
]


class SimConfig(BaseModel):
    """One simulation run.

    ``instance`` is a path to an instance file or the name of a packaged fixture.
    """

    model_config = ConfigDict(frozen=True)

    instance: str
    command: Literal["modular", "polar"] = "modular"
    blocklength: int = Field(..., ge=1)
    blocks: int = Field(1, ge=1)
    seed: int = Field(default_factory=lambda: settings.default_seed, ge=0)
    epsilon: Optional[float] = Field(None, ge=0.0)
    target_rate: Optional[float] = Field(None, gt=0.0, le=1.0)
    pmf: Optional[List[float]] = None
    design_samples: Optional[int] = Field(None, ge=100)
    out: Optional[Path] = None
    format: Literal["json", "csv"] = "json"

    @model_validator(mode="after")
    def check_codec_options(self) -> "SimConfig":
        if self.command == "polar":
            try:
                block_exponent(self.blocklength)
            except PreconditionViolated as e:
                raise ConfigurationError(str(e)) from e
        elif self.target_rate is not None:
            raise ConfigurationError("target_rate only applies to the polar codec")
        return self


class SimResult(BaseModel):
    """Theoretical rate, achieved rate and error probability of a simulation."""

    codec: Literal["modular", "polar"]
    blocklength: int
    blocks: int
    seed: int
    epsilon: float
    theoretical_rate: float
    empirical_rate: float = Field(..., ge=0.0)
    error_report: ErrorReport
    quantization_distortion: Optional[float] = None
    runtime_ms: float = Field(0.0, exclude=True)

    def csv_row(self) -> list:
        return [
            self.codec,
            self.blocklength,
            self.blocks,
            self.seed,
            self.epsilon,
            self.theoretical_rate,
            self.empirical_rate,
            self.error_report.n,
            self.error_report.violations,
            self.error_report.p_avg,
        ]


def prepare_instance(cfg: SimConfig) -> ProblemInstance:
    """Load the configured instance and apply the ε and p(x) overrides."""
    inst = resolve_instance(cfg.instance)
    if cfg.epsilon is not None:
        inst = inst.with_epsilon(cfg.epsilon)
    if cfg.pmf is not None:
        inst = inst.with_px(cfg.pmf)
    return inst


def _simulate_modular(inst: ProblemInstance, cfg: SimConfig, G, rng: np.random.Generator):
    clustering = unique_clustering(inst, G)
    bits = 0
    n = 0
    violations = 0
    for _ in range(cfg.blocks):
        xs, ys = sample_pairs(inst, cfg.blocklength, rng)
        result = modular_pipeline(inst, xs, ys, clustering=clustering)
        bits += len(result.block.bits)
        n += result.report.n
        violations += result.report.violations
    report = ErrorReport(n=n, violations=violations, p_avg=violations / n)
    return bits / n, report, None


def _simulate_polar(inst: ProblemInstance, cfg: SimConfig, solution, rng: np.random.Generator):
    design = design_from_instance(
        inst,
        block_exponent(cfg.blocklength),
        target_rate=cfg.target_rate,
        samples=cfg.design_samples,
        seed=cfg.seed,
        solution=solution,
    )
    xs, ys = sample_pairs(inst, cfg.blocklength * cfg.blocks, rng)
    shape = (cfg.blocks, cfg.blocklength)
    run = run_polar_blocks(inst, design, xs.reshape(shape), ys.reshape(shape), seed=int(rng.integers(2**63)))
    return run.rate, run.error_report, run.distortion


def simulate(cfg: SimConfig) -> SimResult:
    """Draw blocklength * blocks pairs from p(x, y), run the codec and compare against the solver.

    Raises:
        CodecPreconditionError: If the chosen codec cannot run on the instance
    """
    started = time.perf_counter()
    inst = prepare_instance(cfg)
    G = build_hypergraph(inst)
    solution = solve_entropy(inst, G)
    rng = np.random.default_rng(cfg.seed)

    log = logger.bind(codec=cfg.command, blocklength=cfg.blocklength, blocks=cfg.blocks, seed=cfg.seed)
    log.info("simulation_started", epsilon=inst.epsilon, theoretical_rate=solution.value)

    if cfg.command == "modular":
        rate, report, distortion = _simulate_modular(inst, cfg, G, rng)
    else:
        rate, report, distortion = _simulate_polar(inst, cfg, solution, rng)

    result = SimResult(
        codec=cfg.command,
        blocklength=cfg.blocklength,
        blocks=cfg.blocks,
        seed=cfg.seed,
        epsilon=inst.epsilon,
        theoretical_rate=solution.value,
        empirical_rate=rate,
        error_report=report,
        quantization_distortion=distortion,
        runtime_ms=(time.perf_counter() - started) * 1000.0,
    )
    log.info(
        "simulation_finished",
        empirical_rate=result.empirical_rate,
        p_avg=report.p_avg,
        runtime_ms=round(result.runtime_ms, 1),
    )
    return result
