"""Range sweeps, terrain trade-off grid and multi-agent scaling bounds.

Range is defined as v * E / P: distance covered before the usable battery
energy is exhausted at constant speed. Optima are grid argmaxima (an
optional golden-section refinement is available); infeasible points are
excluded. Sweep points are independent and may be evaluated in parallel;
the reduction is deterministic, so parallel and sequential runs agree
bit for bit.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import steadystate
from .params import ScenarioConfig, TerrainParams

#: default velocity grids, m/s
ROLLING_V_GRID = (0.01, 2.0, 200)
FLYING_V_GRID = (0.05, 5.0, 200)

#: circumradius / edge length of the platonic solids, keyed by face count
PLATONIC_CIRCUMRADIUS_PER_EDGE = {
    4: math.sqrt(3.0 / 8.0),
    6: math.sqrt(3.0) / 2.0,
    8: math.sqrt(2.0) / 2.0,
    12: (math.sqrt(3.0) / 4.0) * (1.0 + math.sqrt(5.0)),
}


class AllInfeasibleError(RuntimeError):
    """Every point of a sweep exceeded the rotor thrust limit."""


@dataclass(frozen=True)
class RangeCurve:
    mode: str                 # "rolling" | "flying"
    velocity: np.ndarray      # m/s
    power: np.ndarray         # W, NaN where infeasible
    range_km: np.ndarray      # km, NaN where infeasible
    optimum_v: float
    optimum_range_km: float


@dataclass(frozen=True)
class TradeoffGrid:
    crr: np.ndarray           # axis, rolling resistance coefficient
    theta_deg: np.ndarray     # axis, slope in degrees
    delta_range_km: np.ndarray  # [i_crr, j_theta], rolling minus flying
    flying_range_km: np.ndarray


@dataclass(frozen=True)
class ScalingCurve:
    n: np.ndarray
    ratio_lower: np.ndarray   # rolling/flying range, worst-case geometry
    ratio_upper: np.ndarray   # rolling/flying range, best-case geometry


def range_at(power: float, v: float, total_energy: float) -> float:
    """Range in km at constant speed v and electrical power draw."""
    if v == 0.0:
        return 0.0
    if power <= 0.0:
        raise ValueError(f"power must be > 0 for v > 0, got {power!r}")
    return v * total_energy / power * 1e-3


def default_velocity_grid(mode: str) -> np.ndarray:
    lo, hi, num = ROLLING_V_GRID if mode == "rolling" else FLYING_V_GRID
    return np.linspace(lo, hi, num)


def _power_at(config: ScenarioConfig, mode: str, v: float) -> float:
    """Total electrical power at speed v; NaN if infeasible."""
    try:
        if mode == "rolling":
            return steadystate.rolling_equilibrium(
                config, v).total_electrical_power
        if mode == "flying":
            return steadystate.flying_equilibrium(
                config, v).total_electrical_power
    except steadystate.InfeasibleError:
        return math.nan
    raise ValueError(f"mode must be 'rolling' or 'flying', got {mode!r}")


def _sweep_powers(config: ScenarioConfig, mode: str, v_grid: np.ndarray,
                  hotel_w: float, parallel: bool) -> np.ndarray:
    if parallel:
        with ProcessPoolExecutor() as pool:
            powers = list(pool.map(_power_at, [config] * len(v_grid),
                                   [mode] * len(v_grid), v_grid,
                                   chunksize=max(1, len(v_grid) // 8)))
        powers = np.array(powers)
    else:
        powers = np.array([_power_at(config, mode, v) for v in v_grid])
    return powers + hotel_w


def _golden_refine(config: ScenarioConfig, mode: str, hotel_w: float,
                   energy: float, lo: float, hi: float) -> tuple[float, float]:
    """Golden-section maximization of range over [lo, hi]."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0

    def neg_range(v):
        p = _power_at(config, mode, v) + hotel_w
        return -range_at(p, v, energy) if np.isfinite(p) else math.inf

    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = neg_range(c), neg_range(d)
    for _ in range(200):
        if b - a < 1e-6:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = neg_range(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = neg_range(d)
    v = 0.5 * (a + b)
    return v, -neg_range(v)


def range_sweep(config: ScenarioConfig, mode: str,
                v_grid: np.ndarray | None = None, hotel_w: float = 0.0,
                parallel: bool = False, refine: bool = False) -> RangeCurve:
    """Equilibrium power and range over a velocity grid, with optimum."""
    if v_grid is None:
        v_grid = default_velocity_grid(mode)
    v_grid = np.asarray(v_grid, float)
    if len(v_grid) < 1 or np.any(v_grid <= 0) or np.any(np.diff(v_grid) <= 0):
        raise ValueError("v_grid must be strictly increasing and positive")

    powers = _sweep_powers(config, mode, v_grid, hotel_w, parallel)
    energy = config.total_energy
    ranges = np.where(np.isfinite(powers),
                      v_grid * energy / np.where(powers > 0, powers, np.nan)
                      * 1e-3, np.nan)
    if not np.any(np.isfinite(ranges)):
        raise AllInfeasibleError(
            f"{mode} sweep: every grid point is infeasible")
    i = int(np.nanargmax(ranges))
    opt_v, opt_r = float(v_grid[i]), float(ranges[i])
    if refine:
        lo = float(v_grid[max(0, i - 1)])
        hi = float(v_grid[min(len(v_grid) - 1, i + 1)])
        opt_v, opt_r = _golden_refine(config, mode, hotel_w, energy, lo, hi)
    return RangeCurve(mode=mode, velocity=v_grid, power=powers,
                      range_km=ranges, optimum_v=opt_v,
                      optimum_range_km=opt_r)


def tradeoff_grid(config: ScenarioConfig,
                  crr_range: tuple[float, float] = (0.01, 0.2),
                  theta_range_deg: tuple[float, float] = (-0.5, 2.0),
                  resolution: int = 20,
                  parallel: bool = False) -> TradeoffGrid:
    """Rolling-minus-flying optimum range over a (C_rr, slope) grid.

    The flying optimum depends on the slope only, so it is computed once
    per theta value.
    """
    crr_axis = np.linspace(crr_range[0], crr_range[1], resolution)
    theta_axis = np.linspace(theta_range_deg[0], theta_range_deg[1],
                             resolution)
    delta = np.full((resolution, resolution), np.nan)
    fly = np.full((resolution, resolution), np.nan)

    fly_by_theta = {}
    for j, th_deg in enumerate(theta_axis):
        terrain = TerrainParams(rolling_resistance_crr=crr_axis[0],
                                slope_theta=math.radians(th_deg))
        cfg = replace(config, terrain=terrain)
        try:
            fly_by_theta[j] = range_sweep(cfg, "flying",
                                          parallel=parallel).optimum_range_km
        except AllInfeasibleError:
            fly_by_theta[j] = math.nan

    for i, crr in enumerate(crr_axis):
        for j, th_deg in enumerate(theta_axis):
            terrain = TerrainParams(rolling_resistance_crr=crr,
                                    slope_theta=math.radians(th_deg))
            cfg = replace(config, terrain=terrain)
            fly[i, j] = fly_by_theta[j]
            if math.isnan(fly[i, j]):
                continue
            try:
                roll = range_sweep(cfg, "rolling",
                                   parallel=parallel).optimum_range_km
            except AllInfeasibleError:
                continue
            delta[i, j] = roll - fly[i, j]
    return TradeoffGrid(crr=crr_axis, theta_deg=theta_axis,
                        delta_range_km=delta, flying_range_km=fly)


def platonic_shell_radius(n: float, edge: float) -> float:
    """Circumradius of the pseudo-platonic n-faced solid with given edge.

    Linear interpolation of the real platonic circumradii in face count;
    extrapolated linearly below 4 faces (clamping there would invert the
    bound ordering) and clamped above 12. The radius is floored at edge/2:
    the shell must at least enclose one agent of that footprint.
    """
    faces = sorted(PLATONIC_CIRCUMRADIUS_PER_EDGE)
    radii = [PLATONIC_CIRCUMRADIUS_PER_EDGE[k] * edge for k in faces]
    if n <= faces[0]:
        slope = (radii[1] - radii[0]) / (faces[1] - faces[0])
        r = radii[0] + slope * (n - faces[0])
    elif n >= faces[-1]:
        r = radii[-1]
    else:
        r = float(np.interp(n, faces, radii))
    return max(r, 0.5 * edge)


def polygon_prism_radius(n: int, side: float) -> float:
    """Circumradius of the regular n-gon cross-section, side fixed."""
    if n == 1:
        return side / 2.0  # degenerate single-agent cylinder
    return side / (2.0 * math.sin(math.pi / n))


def _bound_rolling_power(config: ScenarioConfig, v: float, drag_area: float,
                         radius: float, n_agents: int) -> float:
    """Rolling power of an n-agent cluster with explicit bound geometry.

    The torque is shared by the 2 n propeller pairs at the per-agent arm
    length; one rotor per pair spins.
    """
    env, veh, ter = config.environment, config.vehicle, config.terrain
    m = n_agents * veh.cobot_mass
    normal = m * env.gravity * math.cos(ter.slope_theta)
    drag = (0.5 * veh.drag_coefficient_cd * env.air_density
            * drag_area * v * v)
    resist = (drag + m * env.gravity * math.sin(ter.slope_theta)
              + ter.rolling_resistance_crr * normal)
    torque = resist * radius
    c = veh.rotor_arm_length_a / math.sqrt(2.0)
    n_pairs = 2 * n_agents
    f = torque / (n_pairs * c)
    if f > veh.max_rotor_thrust:
        return math.nan
    return n_pairs * steadystate._rolling_rotor_power(config, f, v)


def scaling_bounds(config: ScenarioConfig,
                   n_range: range = range(1, 13)) -> ScalingCurve:
    """Rolling/flying range-ratio bounds versus agent count.

    Mass and battery energy scale with n. The upper bound rolls the
    pseudo-platonic sphere (circular drag cross-section); the lower bound
    rolls the regular n-gon prism (rectangular frontal area 2 R w, which
    grows quickly with n). Flying range is independent of n because n
    independent agents scale power and energy identically.
    """
    side = config.vehicle.shell_width_w
    width = config.vehicle.shell_width_w
    fly_range = range_sweep(config, "flying").optimum_range_km

    v_grid = default_velocity_grid("rolling")
    ns, lowers, uppers = [], [], []
    for n in n_range:
        if n < 1:
            raise ValueError("agent count must be >= 1")
        energy = n * config.vehicle.battery_energy
        results = {}
        r_up = platonic_shell_radius(n, side)
        r_lo = polygon_prism_radius(n, side)
        for tag, (radius, area) in {
                "upper": (r_up, math.pi * r_up ** 2),
                "lower": (r_lo, 2.0 * r_lo * width)}.items():
            powers = np.array([_bound_rolling_power(config, v, area, radius,
                                                    n) for v in v_grid])
            ranges = v_grid * energy / powers * 1e-3
            results[tag] = np.nanmax(ranges)
        ns.append(n)
        uppers.append(results["upper"] / fly_range)
        lowers.append(results["lower"] / fly_range)
    return ScalingCurve(n=np.array(ns), ratio_lower=np.array(lowers),
                        ratio_upper=np.array(uppers))
