"""
Continuous-time jump simulation of an exported generator

FEATURES:
- exact rates converted to floats only here; negative rates are refused
- Gillespie sampling with a per-trajectory numpy Generator
- occupancy time fractions, independent trajectories in a thread pool
- pandas frames for the jump records and the histogram
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Union

import numpy as np
import pandas as pd
from tqdm import tqdm

from ..exactnum.errors import ConfigError, NegativeRate
from .model import GeneratorMatrix

logger = logging.getLogger(__name__)


def rates_to_float(generator: Union[GeneratorMatrix, Sequence[Sequence]],
                   labels: Optional[List[str]] = None) -> np.ndarray:
    """Row-convention rate matrix as floats; raises NegativeRate on any negative off-diagonal rate."""
    if isinstance(generator, GeneratorMatrix):
        labels = labels or generator.labels()
        matrix = generator.to_generator().dense()
    else:
        matrix = [list(row) for row in generator]
    rates = np.array([[float(v) for v in row] for row in matrix], dtype=float)
    if rates.ndim != 2 or rates.shape[0] != rates.shape[1]:
        raise ConfigError(f"generator must be square, got shape {rates.shape}")
    labels = labels or [str(k) for k in range(rates.shape[0])]
    negative = [
        (labels[i], labels[j], float(rates[i, j]))
        for i in range(rates.shape[0])
        for j in range(rates.shape[1])
        if i != j and rates[i, j] < 0
    ]
    if negative:
        raise NegativeRate(negative)
    np.fill_diagonal(rates, 0.0)
    return rates


@dataclass
class SimulationResult:
    """One trajectory: jump times, visited state ordinals and time spent per state."""

    seed: int
    t_max: float
    times: List[float] = field(default_factory=list)
    states: List[int] = field(default_factory=list)
    occupancy: np.ndarray = field(default_factory=lambda: np.zeros(0))
    labels: List[str] = field(default_factory=list)

    @property
    def events(self) -> int:
        return len(self.times) - 1

    @property
    def fractions(self) -> np.ndarray:
        total = self.occupancy.sum()
        return self.occupancy / total if total > 0 else self.occupancy


def gillespie_simulate(generator: Union[GeneratorMatrix, Sequence[Sequence]], t_max: float, seed: int,
                       max_events: Optional[int] = None, initial_state: int = 0,
                       labels: Optional[List[str]] = None) -> SimulationResult:
    """Sample a trajectory up to t_max (or max_events jumps) from a row-convention generator."""
    if t_max <= 0:
        raise ConfigError(f"t_max must be positive, got {t_max}")
    if isinstance(generator, GeneratorMatrix):
        labels = labels or generator.labels()
    rates = rates_to_float(generator, labels)
    size = rates.shape[0]
    if not 0 <= initial_state < size:
        raise ConfigError(f"initial state {initial_state} outside 0..{size - 1}")
    exits = rates.sum(axis=1)
    rng = np.random.default_rng(seed)

    t = 0.0
    state = initial_state
    result = SimulationResult(seed, t_max, [0.0], [state], np.zeros(size), labels or [str(k) for k in range(size)])
    while t < t_max and (max_events is None or result.events < max_events):
        total_rate = exits[state]
        if total_rate <= 0:
            result.occupancy[state] += t_max - t
            t = t_max
            logger.debug(f"🔍 absorbed in state {state} at t={t:.4g}")
            break
        dt = rng.exponential(1 / total_rate)
        if t + dt >= t_max:
            result.occupancy[state] += t_max - t
            t = t_max
            break
        result.occupancy[state] += dt
        t += dt
        state = int(rng.choice(size, p=rates[state] / total_rate))
        result.times.append(t)
        result.states.append(state)
    logger.debug(f"📊 trajectory seed={seed}: {result.events} jumps up to t={t:.4g}")
    return result


def occupancy_fractions(results: Sequence[SimulationResult]) -> np.ndarray:
    """Time fractions pooled over trajectories."""
    if not results:
        raise ConfigError("no trajectories to pool")
    total = sum(r.occupancy for r in results)
    return total / total.sum()


def simulate_many(generator: GeneratorMatrix, t_max: float, seeds: Sequence[int], jobs: int = 1,
                  max_events: Optional[int] = None, progress: bool = False) -> List[SimulationResult]:
    """Independent trajectories, one numpy Generator per seed."""
    rates_to_float(generator)

    def run(seed):
        return gillespie_simulate(generator, t_max, seed, max_events)

    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        iterator = pool.map(run, seeds)
        if progress:
            iterator = tqdm(iterator, total=len(seeds), desc="Trajectories")
        results = list(iterator)
    logger.info(f"✅ simulated {len(results)} trajectories, {sum(r.events for r in results)} jumps")
    return results


def jump_frame(result: SimulationResult) -> pd.DataFrame:
    return pd.DataFrame({
        "time": result.times,
        "state": result.states,
        "label": [result.labels[s] for s in result.states],
    })


def histogram_frame(results: Sequence[SimulationResult], exact: Optional[Sequence] = None) -> pd.DataFrame:
    """Per-state occupancy fractions, alongside the exact stationary law when given."""
    fractions = occupancy_fractions(results)
    labels = results[0].labels
    frame = pd.DataFrame({
        "state": list(range(len(labels))),
        "label": labels,
        "fraction": fractions,
    })
    if exact is not None:
        frame["exact"] = [float(p) for p in exact]
        frame["deviation"] = frame["fraction"] - frame["exact"]
    return frame
