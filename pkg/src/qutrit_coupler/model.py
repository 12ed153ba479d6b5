"""Static model: device parameters, truncated Hilbert space, Hamiltonian.

Two fixed-frequency transmon qutrits (Q1, Q2) are coupled through a
frequency-tunable transmon coupler (C).  Each mode is a Duffing oscillator
and the three modes exchange excitations through their charge quadratures:

    H = sum_i [w_i n_i + (alpha_i/2) n_i (n_i - 1)]
        + sum_{i<j} g_ij (a_i^+ + a_i)(a_j^+ + a_j)

Configuration files store ordinary frequencies in GHz; everything internal
is angular frequency in rad/ns (times in ns).  The conversion happens once,
inside ``build_hamiltonian``.

Pair couplings are single-counted with g_ij the full exchange strength, so
a two-level avoided crossing between a qutrit and the coupler has splitting
2*g_ic.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, asdict
from importlib import resources

import numpy as np

TWO_PI = 2.0 * np.pi

# Mode ordering is Q1 (x) C (x) Q2 so the flattened basis label |i c j>
# reads like the two-qutrit label |i0j> when the coupler is in its ground
# state.
MODE_NAMES = ("q1", "coupler", "q2")


class ModelError(ValueError):
    """Invalid model input (dimension, parameter or range error)."""


@dataclass(frozen=True)
class FluxMap:
    """Coupler-frequency fit  wc(bias) = A*sqrt(cos(B*(bias + phi0))) + C."""

    A: float = 7.95
    B: float = 1.71
    phi0: float = 0.125
    C: float = -0.31


@dataclass(frozen=True)
class DeviceParams:
    """Device parameters in GHz (ordinary frequencies; alphas negative)."""

    omega1: float = 6.074
    omega2: float = 6.725
    alpha1: float = -0.256
    alpha2: float = -0.236
    omegaC_max: float = 7.640
    alphaC: float = -0.310
    g1c: float = 0.0985
    g2c: float = 0.1065
    g12: float = 0.005
    flux_map: FluxMap = field(default_factory=FluxMap)

    def __post_init__(self):
        if min(self.omega1, self.omega2, self.omegaC_max) <= 0:
            raise ModelError("mode frequencies must be positive")
        if self.alpha1 >= 0 or self.alpha2 >= 0 or self.alphaC >= 0:
            raise ModelError("anharmonicities must be negative")
        if min(self.g1c, self.g2c, self.g12) < 0:
            raise ModelError("couplings must be non-negative")

    def validate_finite(self):
        vals = [self.omega1, self.omega2, self.alpha1, self.alpha2,
                self.omegaC_max, self.alphaC, self.g1c, self.g2c, self.g12]
        if not all(math.isfinite(v) for v in vals):
            raise ModelError("non-finite device parameter")


@dataclass(frozen=True)
class HilbertSpace:
    """Per-mode truncation (n1, nc, n2), ordering Q1 (x) C (x) Q2."""

    dims: tuple = (4, 4, 4)

    def __post_init__(self):
        if len(self.dims) != 3 or any(int(d) < 3 for d in self.dims):
            # coupler may be truncated at 2 for quick spectrum checks
            if len(self.dims) != 3 or self.dims[0] < 3 or self.dims[2] < 3 \
                    or self.dims[1] < 2:
                raise ModelError(f"invalid dims {self.dims}")

    @property
    def dim(self) -> int:
        n1, nc, n2 = self.dims
        return n1 * nc * n2

    def index(self, i: int, c: int, j: int) -> int:
        n1, nc, n2 = self.dims
        if not (0 <= i < n1 and 0 <= c < nc and 0 <= j < n2):
            raise ModelError(f"occupation ({i},{c},{j}) outside dims {self.dims}")
        return (i * nc + c) * n2 + j

    def label(self, k: int) -> tuple:
        n1, nc, n2 = self.dims
        if not 0 <= k < self.dim:
            raise ModelError(f"index {k} outside dimension {self.dim}")
        return (k // (nc * n2), (k // n2) % nc, k % n2)

    def computational_indices(self):
        """Flat indices of the nine |i0j> states, row-major in (i, j)."""
        return [self.index(i, 0, j) for i in range(3) for j in range(3)]


def annihilation(dim: int) -> np.ndarray:
    """Ladder operator with <n-1|a|n> = sqrt(n)."""
    if int(dim) < 2:
        raise ModelError(f"annihilation needs dim >= 2, got {dim}")
    return np.diag(np.sqrt(np.arange(1, dim)), 1).astype(complex)


def mode_operators(space: HilbertSpace):
    """Annihilation operators (a1, ac, a2) embedded in the full space."""
    n1, nc, n2 = space.dims
    eyes = [np.eye(n) for n in space.dims]
    a1 = np.kron(np.kron(annihilation(n1), eyes[1]), eyes[2])
    ac = np.kron(np.kron(eyes[0], annihilation(nc)), eyes[2])
    a2 = np.kron(np.kron(eyes[0], eyes[1]), annihilation(n2))
    return a1, ac, a2


class HamiltonianFactory:
    """Caches the coupler-frequency-independent part of H.

    H(wc) = H_fixed + 2*pi*wc * n_c  is linear in the coupler frequency,
    so sweeps and time stepping reuse H_fixed.
    """

    def __init__(self, params: DeviceParams, space: HilbertSpace):
        params.validate_finite()
        self.params = params
        self.space = space
        a1, ac, a2 = mode_operators(space)
        self.a_ops = (a1, ac, a2)
        n_c = ac.conj().T @ ac
        h = np.zeros((space.dim, space.dim), dtype=complex)
        for a, w, al in ((a1, params.omega1, params.alpha1),
                         (ac, 0.0, params.alphaC),
                         (a2, params.omega2, params.alpha2)):
            n = a.conj().T @ a
            h += TWO_PI * (w * n + 0.5 * al * (a.conj().T @ a.conj().T @ a @ a))
        x1, xc, x2 = (a + a.conj().T for a in (a1, ac, a2))
        h += TWO_PI * (params.g1c * x1 @ xc + params.g2c * x2 @ xc
                       + params.g12 * x1 @ x2)
        self.h_fixed = h
        self.n_c = n_c

    def __call__(self, omegaC: float) -> np.ndarray:
        if not math.isfinite(omegaC):
            raise ModelError("non-finite coupler frequency")
        if not 0.0 <= omegaC <= self.params.omegaC_max + 1e-9:
            raise ModelError(
                f"coupler frequency {omegaC} GHz outside [0, "
                f"{self.params.omegaC_max}]")
        return self.h_fixed + (TWO_PI * omegaC) * self.n_c


def build_hamiltonian(params: DeviceParams, omegaC: float,
                      space: HilbertSpace) -> np.ndarray:
    """Full static Hamiltonian at coupler frequency omegaC (GHz), rad/ns."""
    return HamiltonianFactory(params, space)(omegaC)


def coupler_freq_from_bias(bias: float, params: DeviceParams) -> float:
    """Coupler frequency (GHz) from the dimensionless flux bias.

    Only the principal branch is allowed: B*(bias + phi0) must stay inside
    (-pi/2, pi/2), where the fitted square-root-cosine is real and the
    frequency is defined.
    """
    fm = params.flux_map
    arg = fm.B * (bias + fm.phi0)
    if not math.isfinite(arg) or abs(arg) >= 0.5 * np.pi:
        raise ModelError(
            f"flux bias {bias} maps outside the principal branch")
    return fm.A * math.sqrt(math.cos(arg)) + fm.C


def bias_from_coupler_freq(omegaC: float, params: DeviceParams) -> float:
    """Inverse of the flux map on the bias > -phi0 branch."""
    fm = params.flux_map
    if omegaC > fm.A + fm.C or omegaC <= fm.C:
        raise ModelError(f"coupler frequency {omegaC} GHz not reachable")
    arg = math.acos(((omegaC - fm.C) / fm.A) ** 2)
    return arg / fm.B - fm.phi0


# The pulse generator is parked at the flux sweet spot, so a pulse value v
# (zero when idle) sits on top of the DC bias -phi0.
def coupler_freq_from_pulse(v: float, params: DeviceParams) -> float:
    """Coupler frequency for pulse amplitude v relative to the sweet spot."""
    return coupler_freq_from_bias(v - params.flux_map.phi0, params)


def pulse_from_coupler_freq(omegaC: float, params: DeviceParams) -> float:
    """Pulse amplitude (relative to the parked sweet spot) reaching omegaC."""
    return bias_from_coupler_freq(omegaC, params) + params.flux_map.phi0


_DEVICE_KEYS = {"omega1", "omega2", "alpha1", "alpha2", "omegaC_max",
                "alphaC", "g1c", "g2c", "g12", "flux_map"}
_FLUX_KEYS = {"A", "B", "phi0", "C"}


def device_params_from_dict(raw: dict) -> DeviceParams:
    unknown = set(raw) - _DEVICE_KEYS
    if unknown:
        raise ModelError(f"unknown device config keys: {sorted(unknown)}")
    kwargs = dict(raw)
    fm = kwargs.pop("flux_map", None)
    if fm is not None:
        bad = set(fm) - _FLUX_KEYS
        if bad:
            raise ModelError(f"unknown flux_map keys: {sorted(bad)}")
        kwargs["flux_map"] = FluxMap(**fm)
    return DeviceParams(**kwargs)


def load_device_config(path) -> DeviceParams:
    """Read a JSON device config (keys = DeviceParams fields, units GHz)."""
    with open(path, "r", encoding="utf-8") as fh:
        return device_params_from_dict(json.load(fh))


def save_device_config(params: DeviceParams, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(asdict(params), fh, indent=2, sort_keys=True)
        fh.write("\n")


def default_device_params() -> DeviceParams:
    """Bundled device config (the hardware values the model was built for)."""
    ref = resources.files("qutrit_coupler.data").joinpath("device_default.json")
    with ref.open("r", encoding="utf-8") as fh:
        return device_params_from_dict(json.load(fh))


def truncation_drift(params: DeviceParams, omegaC: float,
                     dims_a=(4, 4, 4), dims_b=(5, 5, 5)) -> dict:
    """Cross-Kerr drift between two truncations at one coupler frequency.

    Returns {"chi_a", "chi_b", "drift_mhz"} where each chi entry maps
    (i, j) -> MHz.  Large drift flags truncation-sensitive operating points.
    """
    from . import spectrum  # deferred: spectrum imports model

    out = {}
    for tag, dims in (("chi_a", dims_a), ("chi_b", dims_b)):
        space = HilbertSpace(tuple(dims))
        out[tag] = {(i, j): spectrum.cross_kerr(params, omegaC, i, j, space)
                    for i in (1, 2) for j in (1, 2)}
    out["drift_mhz"] = {k: abs(out["chi_a"][k] - out["chi_b"][k])
                        for k in out["chi_a"]}
    return out
