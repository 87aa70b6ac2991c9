"""Band-limited frame generators and their reconstruction partners.

A generator is represented exactly in the frequency domain: a smooth,
compactly supported radial evaluator plus the constants that pin down its
annulus.  All constructions are closed under serialization, i.e. a profile
rebuilt from its JSON parameters evaluates bit-identically.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import AdmissibilityError, DualConstructionError
from .util import bisect, glue

__all__ = [
    "AdmissibilityConstants",
    "SpectralProfile",
    "WaveletPair",
    "make_admissible",
    "make_dual",
    "make_meyer",
    "combined_profile",
    "check_reconstruction",
    "meyer_gram",
    "meyer_gram_matrix",
    "profile_to_json",
    "profile_from_json",
]


@dataclass(frozen=True)
class AdmissibilityConstants:
    """Annulus constants: support [K0, K0_upper], lower-bound band [K1, K1_upper]."""

    K0: float
    K1: float
    K1_upper: float
    K0_upper: float
    c_lower: float = 1.0

    def validate(self):
        checks = [
            (self.K0 > 0, "K0 > 0"),
            (self.K0 < self.K1, "K0 < K1"),
            (self.K1 < 1.0, "K1 < 1"),
            (1.0 < self.K1_upper, "1 < K1_upper"),
            (self.K1_upper < self.K0_upper, "K1_upper < K0_upper"),
            (2.0 * self.K1 < self.K1_upper, "2*K1 < K1_upper"),
            (self.K0_upper < math.pi, "K0_upper < pi"),
            (self.c_lower > 0, "c_lower > 0"),
        ]
        for ok, name in checks:
            if not ok:
                raise AdmissibilityError(f"constraint violated: {name}")
        return self


class SpectralProfile:
    """Frequency-domain description of a generator.

    Parameters
    ----------
    kind : one of ``admissible``, ``dual``, ``meyer``, ``lowpass``, ``combined``.
    n : ambient dimension.
    radial : vectorized map from |xi| to the radial factor.
    support : (lo, hi) radii outside which the evaluator vanishes identically.
    constants : annulus constants, absent for meyer/lowpass kinds.
    half_shift_phase : multiply by e^{-i xi/2}; only the 1-d Meyer generator
        uses this.
    params : JSON-serializable construction parameters (see profile_to_json).
    """

    def __init__(self, kind, n, radial, support, constants=None,
                 half_shift_phase=False, params=None):
        self.kind = kind
        self.n = int(n)
        self.constants = constants
        self.support = (float(support[0]), float(support[1]))
        self._radial = radial
        self.half_shift_phase = bool(half_shift_phase)
        self.params = params or {}

    def radial(self, r):
        """Radial factor at |xi| = r."""
        return self._radial(np.asarray(r, dtype=float))

    def evaluate(self, xi):
        """Evaluate the profile at frequency vectors.

        For n == 1 `xi` may have any shape; for n >= 2 the last axis must
        hold the n components.
        """
        xi = np.asarray(xi, dtype=float)
        if self.n == 1:
            r = np.abs(xi)
            val = self._radial(r)
            if self.half_shift_phase:
                return val * np.exp(-0.5j * xi)
            return val.astype(complex)
        if xi.shape[-1] != self.n:
            raise ValueError(f"expected last axis of size {self.n}")
        r = np.sqrt(np.sum(xi * xi, axis=-1))
        return self._radial(r).astype(complex)

    def __call__(self, xi):
        return self.evaluate(xi)


@dataclass
class WaveletPair:
    """An analysis/synthesis pair with its measured reconstruction deviation."""

    phi: SpectralProfile
    psi: SpectralProfile
    reconstruction_verified: bool
    max_deviation: float
    tolerance: float


def _admissible_radial(c):
    w_lo = c.K1 - c.K0
    w_hi = c.K0_upper - c.K1_upper

    def radial(r):
        return glue((r - c.K0) / w_lo) * glue((c.K0_upper - r) / w_hi)

    return radial


def make_admissible(constants, n=1):
    """Radial profile rising smoothly over [K0, K1], equal to 1 on
    [K1, K1_upper] and falling back to 0 over [K1_upper, K0_upper]."""
    constants.validate()
    radial = _admissible_radial(constants)
    return SpectralProfile(
        "admissible", n, radial, (constants.K0, constants.K0_upper),
        constants=constants,
        params={"constants": _constants_dict(constants)},
    )


def _dual_radial(phi, k1t, k1ut):
    def h(r):
        return glue((k1ut - r) / (k1ut - 2.0 * k1t))

    def radial(r):
        r = np.asarray(r, dtype=float)
        num = h(r) - h(2.0 * r)
        out = np.zeros_like(num)
        mask = num != 0.0
        if np.any(mask):
            out[mask] = num[mask] / np.conj(phi.radial(r[mask]))
        return out

    return radial


def make_dual(phi, tolerance=1e-12):
    """Reconstruction partner of an admissible profile.

    The partner is (h(xi) - h(2 xi)) / conj(phi_hat(xi)) for a smooth radial
    cutoff h that equals 1 inside 2*k1t and 0 outside k1ut, where
    [k1t, k1ut] is the annulus on which |phi_hat| exceeds c/2 (found by
    bisection).  Summed over dyadic dilates the product telescopes to 1.
    """
    if phi.kind != "admissible" or phi.constants is None:
        raise DualConstructionError("dual construction requires an admissible profile")
    c = phi.constants
    half = 0.5 * c.c_lower
    k1t = bisect(lambda r: float(phi.radial(r)), c.K0, c.K1, target=half)
    k1ut = bisect(lambda r: -float(phi.radial(r)), c.K1_upper, c.K0_upper,
                  target=-half)
    if 2.0 * k1t >= k1ut:
        raise DualConstructionError(
            f"enlarged annulus too thin: 2*{k1t:.6g} >= {k1ut:.6g}")

    radial = _dual_radial(phi, k1t, k1ut)
    c_meas = _min_abs_on_band(radial, c.K1, c.K1_upper)
    psi = SpectralProfile(
        "dual", phi.n, radial, (k1t, k1ut),
        constants=AdmissibilityConstants(c.K0, c.K1, c.K1_upper, c.K0_upper,
                                         c_lower=c_meas),
        params={"base_constants": _constants_dict(c),
                "k1_tilde": k1t, "k1_upper_tilde": k1ut},
    )
    pair = WaveletPair(phi, psi, False, math.inf, tolerance)
    xi = np.logspace(-3, 3, 121)
    pair.max_deviation = check_reconstruction(pair, xi)
    pair.reconstruction_verified = pair.max_deviation <= tolerance
    if not pair.reconstruction_verified:
        raise DualConstructionError(
            f"reconstruction deviation {pair.max_deviation:.3e} above {tolerance:.1e}")
    return pair


def _min_abs_on_band(radial, lo, hi, samples=4097):
    r = np.linspace(lo, hi, samples)
    return float(np.min(np.abs(radial(r))))


def pair_from_profiles(phi, psi, samples=None, tolerance=1e-12):
    """Bundle two profiles, measuring their reconstruction deviation."""
    pair = WaveletPair(phi, psi, False, math.inf, tolerance)
    if samples is None:
        samples = np.logspace(-3, 3, 121)
    pair.max_deviation = check_reconstruction(pair, samples)
    pair.reconstruction_verified = pair.max_deviation <= tolerance
    return pair


def check_reconstruction(pair, xi_samples):
    """Max deviation of sum_nu conj(phi_hat) psi_hat over dilates from 1.

    The dyadic sum is truncated to the levels whose dilated support can
    meet each |xi|; outside that window every term vanishes identically,
    so the truncation is exact.
    """
    r = np.abs(np.asarray(xi_samples, dtype=float))
    if r.ndim > 1:
        r = np.sqrt(np.sum(np.asarray(xi_samples, float) ** 2, axis=-1))
    if r.size == 0:
        raise ValueError("empty frequency sample")
    if np.any(r == 0.0):
        raise ValueError("reconstruction identity only holds for xi != 0")
    lo = min(pair.phi.support[0], pair.psi.support[0])
    hi = max(pair.phi.support[1], pair.psi.support[1])
    nu_lo = int(np.floor(np.log2(r.min() / hi)))
    nu_hi = int(np.ceil(np.log2(r.max() / lo)))
    total = np.zeros(r.shape, dtype=complex)
    for nu in range(nu_lo, nu_hi + 1):
        scaled = r * 2.0 ** (-nu)
        total += np.conj(pair.phi.radial(scaled)) * pair.psi.radial(scaled)
    return float(np.max(np.abs(total - 1.0)))


# ---------------------------------------------------------------------------
# Meyer generator


def _default_chi_params():
    return {"edge": math.pi / 3.0}


def _chi_from_params(params):
    edge = params["edge"]

    def chi(x):
        return glue((np.asarray(x, float) + edge) / (2.0 * edge)) - 0.5

    return chi


def _meyer_theta(chi):
    # chi == -1/2 below -pi/3 makes both branches vanish outside the
    # support annulus, so no explicit cutoff is needed.
    four_thirds_pi = 4.0 * math.pi / 3.0

    def theta(r):
        r = np.asarray(r, dtype=float)
        sq = np.where(r <= four_thirds_pi,
                      0.5 + chi(r - math.pi),
                      0.5 + chi(math.pi - 0.5 * r))
        return np.sqrt(np.maximum(sq, 0.0))

    return theta


def make_meyer(chi_params=None):
    """Orthonormal 1-d generator theta1(xi) e^{-i xi/2}.

    theta1 >= 0 lives on 2pi/3 <= |xi| <= 8pi/3 and is assembled from an odd
    smooth transition chi (chi == 1/2 from pi/3 on).  Note the support upper
    bound exceeds pi, so this generator sits outside the admissible family;
    operations accept it for experiments via kind == "meyer".
    """
    params = dict(chi_params or _default_chi_params())
    chi = _chi_from_params(params)
    pts = np.linspace(0.0, 2.0, 41)
    odd_defect = float(np.max(np.abs(chi(pts) + chi(-pts))))
    if odd_defect > 1e-14:
        raise AdmissibilityError(
            f"chi transition is not odd (defect {odd_defect:.2e})")
    theta = _meyer_theta(chi)
    return SpectralProfile(
        "meyer", 1, theta,
        (2.0 * math.pi / 3.0, 8.0 * math.pi / 3.0),
        half_shift_phase=True,
        params={"chi": params},
    )


def meyer_gram(profile, j1, k1, j2, k2, min_nodes=1 << 14):
    """Inner product of two dilated/translated copies of the Meyer generator.

    <2^{j1/2} psi(2^{j1} . - k1), 2^{j2/2} psi(2^{j2} . - k2)> evaluated by
    trapezoid quadrature of the frequency-domain integrand over the
    intersection of the two support annuli.
    """
    if profile.kind != "meyer":
        raise ValueError("meyer_gram expects a meyer profile")
    if abs(j1) > 6 or abs(j2) > 6 or abs(k1) > 32 or abs(k2) > 32:
        raise ValueError("index outside the supported window |j|<=6, |k|<=32")
    delta = k1 * 2.0 ** (-j1) - k2 * 2.0 ** (-j2)
    return _meyer_gram_delta(profile, j1, j2, delta, min_nodes)


def _meyer_gram_delta(profile, j1, j2, delta, min_nodes=1 << 14):
    lo = max(profile.support[0] * 2.0 ** j1, profile.support[0] * 2.0 ** j2)
    hi = min(profile.support[1] * 2.0 ** j1, profile.support[1] * 2.0 ** j2)
    if lo >= hi:
        return 0.0 + 0.0j
    nodes = max(int(min_nodes), 1 << 14)
    amp = 2.0 ** (-(j1 + j2) / 2.0)

    def branch(sign):
        xi = np.linspace(sign * lo, sign * hi, nodes)
        f1 = profile.evaluate(2.0 ** (-j1) * xi)
        f2 = profile.evaluate(2.0 ** (-j2) * xi)
        integrand = amp * f1 * np.conj(f2) * np.exp(-1j * delta * xi)
        return np.trapezoid(integrand, xi)

    return complex((branch(1.0) + branch(-1.0)) / (2.0 * math.pi))


def meyer_gram_matrix(profile, j_max, k_max, min_nodes=1 << 14):
    """Gram matrix over the window |j| <= j_max, |k| <= k_max.

    Exploits translation structure: for fixed (j1, j2) the entry depends on
    k only through 2^{-j1} k1 - 2^{-j2} k2, and levels separated by two or
    more octaves have disjoint supports.
    """
    js = range(-j_max, j_max + 1)
    ks = range(-k_max, k_max + 1)
    index = [(j, k) for j in js for k in ks]
    size = len(index)
    gram = np.zeros((size, size), dtype=complex)
    pos = {qk: i for i, qk in enumerate(index)}
    for j1 in js:
        for j2 in js:
            if abs(j1 - j2) >= 2:
                continue
            cache = {}
            for k1 in ks:
                for k2 in ks:
                    key = k1 * 2 ** (j_max - j1) - k2 * 2 ** (j_max - j2)
                    if key not in cache:
                        delta = k1 * 2.0 ** (-j1) - k2 * 2.0 ** (-j2)
                        cache[key] = _meyer_gram_delta(profile, j1, j2, delta,
                                                       min_nodes)
                    gram[pos[(j1, k1)], pos[(j2, k2)]] = cache[key]
    return gram, index


def combined_profile(pair):
    """Profile with radial part conj(phi_hat) psi_hat.

    This product is the natural single-window form of a reconstruction pair:
    its dyadic dilates sum to 1 away from the origin.  For the Meyer pair the
    two half-shift phases cancel, so the product is radial in every case this
    library constructs.
    """
    phi, psi = pair.phi, pair.psi
    if phi.n != psi.n:
        raise ValueError("profile dimensions differ")

    def radial(r):
        return np.conj(phi.radial(r)) * psi.radial(r)

    lo = max(phi.support[0], psi.support[0])
    hi = min(phi.support[1], psi.support[1])
    return SpectralProfile(
        "combined", phi.n, radial, (lo, hi),
        constants=phi.constants,
        params={"phi": profile_to_json(phi), "psi": profile_to_json(psi)},
    )


# ---------------------------------------------------------------------------
# Serialization


def _constants_dict(c):
    return {"K0": c.K0, "K1": c.K1, "K1_upper": c.K1_upper,
            "K0_upper": c.K0_upper, "c_lower": c.c_lower}


def _constants_from_dict(d):
    return AdmissibilityConstants(d["K0"], d["K1"], d["K1_upper"],
                                  d["K0_upper"], d.get("c_lower", 1.0))


def profile_to_json(profile):
    return {"kind": profile.kind, "n": profile.n, **profile.params}


def profile_from_json(data):
    kind = data["kind"]
    if kind == "admissible":
        return make_admissible(_constants_from_dict(data["constants"]),
                               n=data["n"])
    if kind == "dual":
        phi = make_admissible(_constants_from_dict(data["base_constants"]),
                              n=data["n"])
        return make_dual(phi).psi
    if kind == "meyer":
        return make_meyer(data["chi"])
    if kind == "combined":
        phi = profile_from_json(data["phi"])
        psi = profile_from_json(data["psi"])
        return combined_profile(pair_from_profiles(phi, psi))
    raise ValueError(f"unknown profile kind {kind!r}")


def save_profile(path, profile):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(profile_to_json(profile), fh, indent=2, sort_keys=True)


def load_profile(path):
    with open(path, encoding="utf-8") as fh:
        return profile_from_json(json.load(fh))
