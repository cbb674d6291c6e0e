"""Sweep drivers that walk the Leggett-Garg pipeline over the study scenarios.

Each ``run_*`` function returns an ordered sequence of :class:`SweepRecord`
rows ready for CSV emission; orderings are fixed so identical inputs give
byte-identical output.  Dephasing strengths are quoted on the reference axis
(:func:`fmo_model.dephasing_axis_rate` maps them to generator rates) and
measurement intervals on the reference time axis
(:func:`quantum_core.axis_time_to_ps` maps them to generator time).
"""

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .quantum_core import (
    SITES,
    SPEED_OF_LIGHT_CM_PER_PS,
    TIME_AXIS_UNITS_PER_PS,
    DichotomicObservable,
    axis_time_to_ps,
    make_site_observable,
    wavenumber_to_angular_ps,
)
from .fmo_model import (
    DEFAULT_RECOMB_RATE_CM,
    DEFAULT_SINK_RATE_CM,
    DEPHASING_AXIS_TO_RATE,
    TEMPERATURE_ANCHORS_PER_PS,
    TRAPPING_SITE,
    InitialState,
    LindbladModel,
    build_coherent_model,
    build_default_hamiltonian,
    build_default_model,
    build_model,
    dephasing_axis_rate,
    initial_state,
    perturb_hamiltonian,
)
from .dynamics import propagator_for
from .leggett_garg import (
    SignPattern,
    ascending_dt_grid,
    find_strongest_violation,
    lg_quantities_with,
)

# Interval grids live in (0, DT_MAX] on the reference time axis.  The fine
# grid is uniform; the coarse lattice matches the resolution the reference
# strongest-violation intervals sit on (multiples of 0.001/c).
DT_MAX = 5.0
FINE_GRID_POINTS = 1500
REFERENCE_DT_STEP = 0.001 / SPEED_OF_LIGHT_CM_PER_PS

# Dephasing-axis sweep 0..12 in steps of 0.1 covers both temperature anchors.
GAMMA_AXIS_MAX = 12.0
GAMMA_AXIS_STEPS = 120
ROOM_TEMPERATURE_GAMMA = 9.1

# Alternative trapping rates (stored generator rates, ps^-1).
TRAPPING_VARIANT_RATES_PER_PS = (0.25, 1.0, 4.0)

# States used in noisy sweeps; the maximally mixed state is excluded there.
NOISY_STATE_LABELS = ("mix16", "site1", "site6")

PATTERN_MIN = "min"

CSV_HEADER = "experiment,initial_state,observable,gamma_per_ps,dt_ps,pattern,K,violation"


@dataclass(frozen=True)
class SweepRecord:
    """One evaluated sweep point, fields in CSV column order."""

    experiment: str
    initial_state: str
    observable: str
    gamma_per_ps: float
    dt_ps: float
    pattern: str
    k: float
    violation: bool = field(init=False)

    def __post_init__(self):
        if self.gamma_per_ps < 0.0:
            raise ValueError(f"gamma_per_ps must be nonnegative, got {self.gamma_per_ps}")
        object.__setattr__(self, "violation", self.k < 0.0)


@dataclass(frozen=True)
class TemperatureAnchor:
    """A published correspondence between dephasing strength and temperature."""

    gamma_per_ps: float
    temperature_k: float


TEMPERATURE_ANCHORS = tuple(
    TemperatureAnchor(gamma, kelvin)
    for kelvin, gamma in sorted(TEMPERATURE_ANCHORS_PER_PS.items())
)


def temperature_for_gamma(gamma_per_ps: float) -> float:
    """Temperature of an anchored dephasing strength; anchors only, no interpolation."""
    for anchor in TEMPERATURE_ANCHORS:
        if anchor.gamma_per_ps == gamma_per_ps:
            return anchor.temperature_k
    known = ", ".join(str(a.gamma_per_ps) for a in TEMPERATURE_ANCHORS)
    raise KeyError(f"no temperature anchor at gamma = {gamma_per_ps} (anchors: {known})")


def fine_dt_grid(points: int = FINE_GRID_POINTS) -> list[float]:
    """Uniform interval grid over (0, DT_MAX] with ``points`` points."""
    if points < 1:
        raise ValueError(f"grid needs at least one point, got {points}")
    return [DT_MAX * k / points for k in range(1, points + 1)]


def reference_dt_grid() -> list[float]:
    """The coarse interval lattice: multiples of REFERENCE_DT_STEP up to DT_MAX."""
    count = int(DT_MAX / REFERENCE_DT_STEP + 1e-9)
    return [k * REFERENCE_DT_STEP for k in range(1, count + 1)]


def resolve_pattern(pattern):
    """Normalize a pattern choice to (label, combiner over (c12, c23, c13)).

    Accepts a :class:`SignPattern`, its name, or ``"min"`` which takes the
    minimum K over all four sign patterns.
    """
    if isinstance(pattern, SignPattern):
        return pattern.name.lower(), pattern.combine
    name = str(pattern).lower()
    if name == PATTERN_MIN:
        return PATTERN_MIN, lambda c12, c23, c13: min(
            p.combine(c12, c23, c13) for p in SignPattern
        )
    resolved = SignPattern.from_name(name)
    return resolved.name.lower(), resolved.combine


def _as_state(rho0) -> InitialState:
    if isinstance(rho0, InitialState):
        return rho0
    return initial_state(str(rho0))


def _as_observables(sites) -> list[DichotomicObservable]:
    out = []
    for entry in sites:
        if isinstance(entry, DichotomicObservable):
            out.append(entry)
        else:
            out.append(make_site_observable(int(entry)))
    return out


def _k_from(propagator, q, rho, dt_axis, combine) -> float:
    # BASE signs yield the raw correlators; the combiner applies the pattern.
    c12, c23, c13, _ = lg_quantities_with(
        propagator, q, rho, axis_time_to_ps(dt_axis), SignPattern.BASE
    )
    return combine(c12, c23, c13)


def _scan_min(propagator, q, rho, grid, combine) -> tuple[float, float]:
    # Strict improvement only, so ties keep the smallest interval.
    best_k, best_dt = math.inf, grid[0]
    for dt in grid:
        k = _k_from(propagator, q, rho, dt, combine)
        if k < best_k:
            best_k, best_dt = k, dt
    return best_k, best_dt


def run_coherent_scan(rho0, sites=SITES, grid=None, pattern=SignPattern.FLIP2,
                      hamiltonian_cm=None):
    """K across an interval grid under purely coherent evolution.

    One record per (observable, interval), observables first.  ``sites``
    entries may be site numbers or prebuilt dichotomic observables.
    """
    state = _as_state(rho0)
    observables = _as_observables(sites)
    grid = ascending_dt_grid(fine_dt_grid() if grid is None else grid)
    label, combine = resolve_pattern(pattern)
    model = build_coherent_model(hamiltonian_cm)
    propagator = propagator_for(model)
    rho = state.realize()
    records = []
    for q in observables:
        for dt in grid:
            k = _k_from(propagator, q, rho, dt, combine)
            records.append(
                SweepRecord("coherent-scan", state.label, q.label, 0.0, dt, label, k)
            )
    return records


TABLE2_STATES = ("mix16", "site1", "site6")


def run_table2(initial_states=TABLE2_STATES, grid=None, pattern=SignPattern.FLIP2,
               hamiltonian_cm=None):
    """Strongest coherent violation per (state, site), plus a mixed-state summary.

    Emits one row per state and site with the grid minimum of K and its
    interval, then one final row for the maximally mixed state reporting its
    minimum over all sites and intervals (observable label ``all``).
    """
    grid = ascending_dt_grid(fine_dt_grid() if grid is None else grid)
    label, combine = resolve_pattern(pattern)
    model = build_coherent_model(hamiltonian_cm)
    propagator = propagator_for(model)
    records = []
    for entry in initial_states:
        state = _as_state(entry)
        rho = state.realize()
        for site in SITES:
            q = make_site_observable(site)
            if isinstance(pattern, SignPattern):
                k_min, dt_star = find_strongest_violation(model, q, state, grid, pattern)
            else:
                k_min, dt_star = _scan_min(propagator, q, rho, grid, combine)
            records.append(
                SweepRecord("table2", state.label, q.label, 0.0, dt_star, label, k_min)
            )
    mixed = initial_state("maxmix7")
    rho = mixed.realize()
    best_k, best_dt = math.inf, grid[0]
    for site in SITES:
        k, dt = _scan_min(propagator, make_site_observable(site), rho, grid, combine)
        if k < best_k:
            best_k, best_dt = k, dt
    records.append(SweepRecord("table2", mixed.label, "all", 0.0, best_dt, label, best_k))
    return records


def table2_pattern_floor(initial_states=TABLE2_STATES, grid=None, hamiltonian_cm=None):
    """Per (state, site): grid minimum of the four-pattern minimum K.

    Reported alongside the single-pattern table so readers can see whether
    another sign choice digs deeper anywhere.
    """
    grid = ascending_dt_grid(fine_dt_grid() if grid is None else grid)
    _, combine = resolve_pattern(PATTERN_MIN)
    propagator = propagator_for(build_coherent_model(hamiltonian_cm))
    floor = {}
    for entry in initial_states:
        state = _as_state(entry)
        rho = state.realize()
        for site in SITES:
            k, _ = _scan_min(propagator, make_site_observable(site), rho, grid, combine)
            floor[f"{state.label}/site{site}"] = k
    return floor


def _intervals_on(grid, state: InitialState, hamiltonian_cm) -> dict[int, float]:
    model = build_coherent_model(hamiltonian_cm)
    return {
        site: find_strongest_violation(model, make_site_observable(site), state, grid)[1]
        for site in SITES
    }


@lru_cache(maxsize=None)
def _reference_intervals_cached(state_label: str) -> tuple[tuple[int, float], ...]:
    return tuple(
        sorted(_intervals_on(reference_dt_grid(), initial_state(state_label), None).items())
    )


def reference_intervals(rho0, hamiltonian_cm=None) -> dict[int, float]:
    """Strongest-violation interval per site on the coarse reference lattice.

    Always selected with the (-1, -1, +1) pattern, matching the convention
    of the strongest-violation table these intervals freeze.
    """
    state = _as_state(rho0)
    if hamiltonian_cm is None:
        return dict(_reference_intervals_cached(state.label))
    return _intervals_on(reference_dt_grid(), state, hamiltonian_cm)


def fine_intervals(rho0, points: int = FINE_GRID_POINTS, hamiltonian_cm=None) -> dict[int, float]:
    """Strongest-violation interval per site on the fine uniform grid."""
    return _intervals_on(fine_dt_grid(points), _as_state(rho0), hamiltonian_cm)


def gamma_axis_sweep() -> list[float]:
    """Dephasing-axis grid 0..GAMMA_AXIS_MAX in GAMMA_AXIS_STEPS equal steps."""
    return [i * GAMMA_AXIS_MAX / GAMMA_AXIS_STEPS for i in range(GAMMA_AXIS_STEPS + 1)]


def run_dephasing_sweep(rho0, gammas=None, dt_table=None, pattern=SignPattern.FLIP2,
                        hamiltonian_cm=None, gamma_sink_cm=DEFAULT_SINK_RATE_CM,
                        gamma_recomb_cm=DEFAULT_RECOMB_RATE_CM):
    """K versus dephasing strength at each site's frozen measurement interval.

    ``gammas`` are reference-axis values; each model applies the generator
    rate ``dephasing_axis_rate(gamma)`` uniformly to all sites.  ``dt_table``
    maps site -> interval and defaults to :func:`reference_intervals` for
    ``rho0``.  Records are ordered site-major, then by gamma.
    """
    state = _as_state(rho0)
    gammas = [float(g) for g in (gamma_axis_sweep() if gammas is None else gammas)]
    for g in gammas:
        if g < 0.0:
            raise ValueError(f"dephasing strengths must be nonnegative, got {g}")
    if dt_table is None:
        table = reference_intervals(state, hamiltonian_cm)
    else:
        table = dict(dt_table)
    label, combine = resolve_pattern(pattern)
    rho = state.realize()
    # One model per strength, held here so propagator caches persist across sites.
    models = {
        g: build_model(
            dephasing_axis_rate(g),
            hamiltonian_cm=hamiltonian_cm,
            gamma_sink_cm=gamma_sink_cm,
            gamma_recomb_cm=gamma_recomb_cm,
        )
        for g in gammas
    }
    records = []
    for site in SITES:
        q = make_site_observable(site)
        dt = float(table[site])
        for g in gammas:
            k = _k_from(propagator_for(models[g]), q, rho, dt, combine)
            records.append(
                SweepRecord("dephasing-sweep", state.label, q.label, g, dt, label, k)
            )
    return records


def room_temperature_violations(pattern=SignPattern.FLIP2, hamiltonian_cm=None,
                                gamma_sink_cm=DEFAULT_SINK_RATE_CM,
                                gamma_recomb_cm=DEFAULT_RECOMB_RATE_CM):
    """(state, site, interval, K) for each noisy-state site violating at 298 K.

    Evaluated at the room-temperature anchor with each state's frozen
    reference intervals; the maximally mixed state is excluded.
    """
    _, combine = resolve_pattern(pattern)
    model = build_model(
        dephasing_axis_rate(ROOM_TEMPERATURE_GAMMA),
        hamiltonian_cm=hamiltonian_cm,
        gamma_sink_cm=gamma_sink_cm,
        gamma_recomb_cm=gamma_recomb_cm,
    )
    propagator = propagator_for(model)
    out = []
    for state_label in NOISY_STATE_LABELS:
        state = initial_state(state_label)
        rho = state.realize()
        intervals = reference_intervals(state, hamiltonian_cm)
        for site in SITES:
            k = _k_from(propagator, make_site_observable(site), rho, intervals[site], combine)
            if k < 0.0:
                out.append((state, site, intervals[site], k))
    return out


@dataclass(frozen=True)
class PairShift:
    """Perturbation response of one nominally violating (state, site) pair."""

    initial_state: str
    observable: str
    dt_ps: float
    k_nominal: float
    max_abs_shift: float
    sign_preserved: bool


@dataclass(frozen=True)
class RobustnessResult:
    """Perturbed-Hamiltonian study: emitted records plus per-pair summaries."""

    records: tuple[SweepRecord, ...]
    pairs: tuple[PairShift, ...]
    max_abs_shift: float
    all_signs_preserved: bool
    trials: int
    sigma2: float
    seed: int


def run_robustness(trials: int = 10, sigma2: float = 2.0, seed: int = 0,
                   pattern=SignPattern.FLIP2, hamiltonian_cm=None,
                   gamma_sink_cm=DEFAULT_SINK_RATE_CM,
                   gamma_recomb_cm=DEFAULT_RECOMB_RATE_CM) -> RobustnessResult:
    """Site-energy/coupling noise response of the room-temperature violations.

    Trial ``i`` perturbs every independent Hamiltonian entry with one
    N(0, sigma2) draw (cm^-1) seeded ``seed + i``, rebuilds the model at the
    room-temperature anchor, and re-evaluates K for every nominally violating
    pair.  Per pair, the emitted rows are the nominal value followed by the
    trials in order, with the trial index carried in the experiment id.
    """
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    if sigma2 < 0.0:
        raise ValueError(f"sigma2 must be nonnegative, got {sigma2}")
    label, combine = resolve_pattern(pattern)
    gamma = ROOM_TEMPERATURE_GAMMA
    nominal_pairs = room_temperature_violations(
        pattern, hamiltonian_cm, gamma_sink_cm, gamma_recomb_cm
    )
    if hamiltonian_cm is None:
        base_h = build_default_hamiltonian()
    else:
        base_h = np.asarray(hamiltonian_cm, dtype=float)
    trial_models = [
        build_model(
            dephasing_axis_rate(gamma),
            hamiltonian_cm=perturb_hamiltonian(base_h, sigma2, seed + i),
            gamma_sink_cm=gamma_sink_cm,
            gamma_recomb_cm=gamma_recomb_cm,
        )
        for i in range(trials)
    ]
    records, pairs = [], []
    for state, site, dt, k_nominal in nominal_pairs:
        q = make_site_observable(site)
        rho = state.realize()
        records.append(
            SweepRecord("robustness:nominal", state.label, q.label, gamma, dt, label, k_nominal)
        )
        max_shift, signs_ok = 0.0, True
        for i, model in enumerate(trial_models):
            k = _k_from(propagator_for(model), q, rho, dt, combine)
            records.append(
                SweepRecord(f"robustness:trial{i}", state.label, q.label, gamma, dt, label, k)
            )
            max_shift = max(max_shift, abs(k - k_nominal))
            signs_ok = signs_ok and k < 0.0
        pairs.append(PairShift(state.label, q.label, dt, k_nominal, max_shift, signs_ok))
    return RobustnessResult(
        records=tuple(records),
        pairs=tuple(pairs),
        max_abs_shift=max((p.max_abs_shift for p in pairs), default=0.0),
        all_signs_preserved=all(p.sign_preserved for p in pairs),
        trials=trials,
        sigma2=sigma2,
        seed=seed,
    )


def trapping_variant_rates(rates_per_ps=None) -> dict[str, float]:
    """Experiment id -> stored trapping rate (ps^-1) for the variant study.

    The default set is the three literature rates plus the default model's
    rate, which is tagged ``default`` instead of its numeric value.
    """
    if rates_per_ps is None:
        variants = {
            f"trapping-variants:{rate:g}": float(rate)
            for rate in TRAPPING_VARIANT_RATES_PER_PS
        }
        variants["trapping-variants:default"] = wavenumber_to_angular_ps(DEFAULT_SINK_RATE_CM)
        return variants
    variants = {}
    for rate in rates_per_ps:
        rate = float(rate)
        if rate <= 0.0:
            raise ValueError(f"trapping rates must be positive, got {rate}")
        variants[f"trapping-variants:{rate:g}"] = rate
    return variants


def run_trapping_variants(rates_per_ps=None, pattern=SignPattern.FLIP2,
                          hamiltonian_cm=None, gamma_recomb_cm=DEFAULT_RECOMB_RATE_CM):
    """Room-temperature K per (state, site) under alternative trapping rates.

    Reruns the dephasing-sweep evaluation at the room-temperature anchor with
    the sink rate replaced by each variant, all other parameters default.
    Records are ordered by variant, then state, then site.
    """
    variants = trapping_variant_rates(rates_per_ps)
    label, combine = resolve_pattern(pattern)
    gamma = ROOM_TEMPERATURE_GAMMA
    if hamiltonian_cm is None:
        base_h = build_default_hamiltonian()
    else:
        base_h = np.asarray(hamiltonian_cm, dtype=float)
    records = []
    for exp_id, rate in variants.items():
        model = LindbladModel(
            hamiltonian_cm=base_h,
            gamma_deph_per_ps=dephasing_axis_rate(gamma),
            gamma_recomb_per_ps=wavenumber_to_angular_ps(gamma_recomb_cm),
            gamma_sink_per_ps=rate,
        )
        propagator = propagator_for(model)
        for state_label in NOISY_STATE_LABELS:
            state = initial_state(state_label)
            rho = state.realize()
            intervals = reference_intervals(state, hamiltonian_cm)
            for site in SITES:
                q = make_site_observable(site)
                k = _k_from(propagator, q, rho, intervals[site], combine)
                records.append(
                    SweepRecord(exp_id, state.label, q.label, gamma, intervals[site], label, k)
                )
    return records


def format_float(value: float) -> str:
    """The CSV number format: 9 significant digits, shortest form."""
    return format(float(value), ".9g")


def record_row(record: SweepRecord) -> str:
    return ",".join(
        (
            record.experiment,
            record.initial_state,
            record.observable,
            format_float(record.gamma_per_ps),
            format_float(record.dt_ps),
            record.pattern,
            format_float(record.k),
            "true" if record.violation else "false",
        )
    )


def write_records_csv(path, records) -> None:
    """Write records under the fixed schema header; UTF-8, LF line endings."""
    lines = [CSV_HEADER]
    lines.extend(record_row(record) for record in records)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write("\n".join(lines) + "\n")


def write_metadata(path, metadata: dict) -> None:
    """Deterministic JSON sidecar: sorted keys, two-space indent, LF endings."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        json.dump(metadata, handle, indent=2, sort_keys=True)
        handle.write("\n")


def model_metadata(model: LindbladModel | None = None) -> dict:
    """Model parameters and unit conventions for the metadata sidecar."""
    if model is None:
        model = build_default_model()
    return {
        "hamiltonian_cm": [[float(x) for x in row] for row in model.hamiltonian_cm],
        "gamma_sink_per_ps": float(model.gamma_sink_per_ps),
        "gamma_recomb_per_ps": [float(x) for x in model.gamma_recomb_per_ps],
        "trapping_site": TRAPPING_SITE,
        "dephasing_rate_per_axis_unit": DEPHASING_AXIS_TO_RATE,
        "time_axis_units_per_ps": TIME_AXIS_UNITS_PER_PS,
        "temperature_anchors_k_by_gamma": {
            format_float(a.gamma_per_ps): a.temperature_k for a in TEMPERATURE_ANCHORS
        },
    }
