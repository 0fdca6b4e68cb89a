"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the lines are written past
pytest's capture so they show up in the normal log.
"""
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from kohncoerce import (DiscFunction, ExponentSet, bergman_project, cauchy_annulus_ratio,
                        classify, delta_analysis, derived_sets, false_inequality_ratio,
                        optimal_delta, rho_by_definition, spectrum_decision, sufficient_delta,
                        uncertainty_ratio)
from kohncoerce.admissibility import (comparability_band, doubling_cap, doubling_constant,
                                      kappa_radius_check)
from kohncoerce.disc import random_disc_function, standard_family as disc_family
from kohncoerce.disc import standard_potentials
from kohncoerce.energy import standard_family
from kohncoerce import QuadratureSpec, TestFunction, coercivity_certificate, weighted_energy
from kohncoerce.verify import dense_ray_minimum, hessian_suite, power_law_band
from kohncoerce.weight import hessian_xy, lambda_approx_xy, lambda_min_xy, phi_xy

from conftest import GAMMA_FIG, TEST_GAMMAS

PI = math.pi


class Criterion:
    def __init__(self, capsys, number, title, limit):
        self.capsys, self.number, self.title, self.limit = capsys, number, title, limit
        self.failures, self.notes = [], []

    def check(self, cond, what):
        if not cond:
            self.failures.append(what)

    def note(self, text):
        self.notes.append(text)

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        if exc is not None:
            self.failures.append(f"{exc_type.__name__}: {exc}")
        self.check(elapsed < self.limit, f"runtime {elapsed:.3g}s over {self.limit:g}s")
        status = "FAIL" if self.failures else "PASS"
        detail = "; ".join(self.failures or self.notes)
        with self.capsys.disabled():
            print(f"\n[{status}] criterion {self.number:>2} {self.title} "
                  f"({elapsed:.3g}s, limit {self.limit:g}s) {detail}")
        if exc is None:
            assert not self.failures, "; ".join(self.failures)
        return False


def _timed(fn, *args):
    t = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t


def test_criterion_01_figure_profile(capsys):
    with Criterion(capsys, 1, "figure weight profile", 1.0) as c:
        prof, dt = _timed(classify, GAMMA_FIG)
        c.check(dt < 1e-3, f"classify took {dt * 1e3:.3f} ms")
        c.check(prof.sigma == Fraction(4) and isinstance(prof.sigma, Fraction), "sigma")
        c.check(prof.tau == Fraction(9, 4) and isinstance(prof.tau, Fraction), "tau")
        c.check(prof.homogeneous == (16, 12), "homogeneity")
        c.check(prof.nu == Fraction(2, 3), "nu")
        c.note(f"σ={prof.sigma} τ={prof.tau} (m,n)={prof.homogeneous} ν={prof.nu} in {dt * 1e3:.3f} ms")


def test_criterion_02_spectrum_decisions(capsys):
    cases = [({(2, 0), (0, 2)}, "NotDiscrete"),
             ({(2, 0), (0, 2), (1, 1)}, "Discrete"),
             ({(1, 0), (0, 1)}, "Inconclusive")]
    with Criterion(capsys, 2, "spectrum decisions", 1.0) as c:
        for gamma, expected in cases:
            dec, dt = _timed(spectrum_decision, gamma)
            c.check(dec.kind == expected, f"{sorted(gamma)} gave {dec.kind}")
            c.check(dt < 1e-3, f"{sorted(gamma)} took {dt * 1e3:.3f} ms")
        c.note("NotDiscrete, Discrete, Inconclusive")


def test_criterion_03_hessian_identity(capsys):
    with Criterion(capsys, 3, "Hessian closed form and finite differences", 10.0) as c:
        closed, fd = hessian_suite(count=1000, seed=2024)
        c.check(closed.passed and closed.measured["pairs"] >= 1000, f"closed form {closed.measured}")
        c.check(fd.passed, f"finite differences {fd.measured}")
        c.note(f"1000 pairs, worst closed {closed.measured['worst_relative']:.1e}, "
               f"worst fd {fd.measured['worst_relative']:.1e}")


def _comparison_bands(gamma, res):
    s = np.geomspace(1e-2, 1e2, res)
    S, T = np.meshgrid(s, s)
    x, y = S * S, T * T
    _, _, _, det, tr, lam = hessian_xy(gamma, x, y)
    ds = derived_sets(gamma)
    ratios = {
        "det": det / phi_xy(ds.gamma_1, x, y),
        "trace": tr / phi_xy(ds.gamma_2, x, y),
        "lambda": lam / lambda_approx_xy(gamma, x, y),
    }
    return {k: (float(v.min()), float(v.max())) for k, v in ratios.items()}


def test_criterion_04_comparability_bands(capsys):
    with Criterion(capsys, 4, "det/trace/lambda comparability bands", 30.0) as c:
        worst = 0.0
        for gamma in TEST_GAMMAS:
            coarse, fine = _comparison_bands(gamma, 64), _comparison_bands(gamma, 128)
            for k in coarse:
                lo, hi = fine[k]
                c.check(lo > 0 and math.isfinite(hi), f"{k} band for {sorted(gamma)} degenerate")
                drift = abs((hi / lo) / (coarse[k][1] / coarse[k][0]) - 1)
                worst = max(worst, drift)
                c.check(drift <= 0.05, f"{k} band width for {sorted(gamma)} moved {drift:.1%}")
        c.note(f"5 weights, worst width change {worst:.2%}")


def test_criterion_05_power_laws(capsys):
    with Criterion(capsys, 5, "power laws on E1, E2, E3", 30.0) as c:
        coarse, fine = power_law_band(GAMMA_FIG, 64), power_law_band(GAMMA_FIG, 128)
        c.check(set(coarse) == set(fine) and len(fine) == 3, f"regions {sorted(map(str, fine))}")
        consts = []
        for lab in sorted(fine, key=str):
            C1 = max(coarse[lab][1], 1 / coarse[lab][0])
            C2 = max(fine[lab][1], 1 / fine[lab][0])
            c.check(math.isfinite(C2) and fine[lab][0] > 0, f"{lab} band degenerate")
            c.check(abs(C2 / C1 - 1) <= 0.05, f"{lab}: C moved from {C1:.4g} to {C2:.4g}")
            consts.append(f"{lab} C={C2:.4g}")
        c.note(", ".join(consts))


def _oracle_ratio(gamma, ray):
    ds = derived_sets(gamma)
    u, v = (Fraction(t) for t in ray)
    m1 = max(u * a + v * b for a, b in ds.gamma_1.points)
    m2 = max(u * a + v * b for a, b in ds.gamma_2.points)
    return (m1 - m2) / max(u, v)


def _fuzzed_eligible(rng, count):
    out = []
    while len(out) < count:
        m, n = (int(v) for v in rng.integers(2, 9, 2))
        k = int(rng.integers(1, 4))
        mixed = {(int(a), int(b)) for a, b in rng.integers(1, 9, size=(k, 2))}
        out.append(ExponentSet({(m, 0), (0, n), *mixed}))
    return out


def test_criterion_06_delta_exactness(capsys):
    with Criterion(capsys, 6, "optimal delta exactness", 60.0) as c:
        da = delta_analysis(GAMMA_FIG)
        c.check(optimal_delta(GAMMA_FIG) == Fraction(9, 4), f"δ* = {da.delta}")
        dense = dense_ray_minimum(GAMMA_FIG, 10_000)
        c.check(dense >= Fraction(9, 4), f"dense oracle min {dense} below 9/4")
        c.check(_oracle_ratio(GAMMA_FIG, da.ray) == Fraction(9, 4), f"ray {da.ray} not tight")
        for gamma in _fuzzed_eligible(np.random.default_rng(6), 20):
            d = optimal_delta(gamma)
            c.check(d <= dense_ray_minimum(gamma, 10_000), f"{sorted(gamma)} above oracle")
            c.check(d >= sufficient_delta(gamma), f"{sorted(gamma)} below sufficient bound")
            c.check(_oracle_ratio(gamma, delta_analysis(gamma).ray) == d, f"{sorted(gamma)} ray")
        c.note(f"δ*=9/4 on ray {tuple(da.ray)}, dense min {float(dense):.5f}, 20 fuzzed sets")


def test_criterion_07_uncertainty_closed_forms(capsys):
    with Criterion(capsys, 7, "uncertainty lab closed forms", 10.0) as c:
        p = bergman_project(DiscFunction.from_monomials({(1, 1): 1.0}))
        half = DiscFunction.from_monomials({(0, 0): 0.5})
        c.check(abs(p.modes()[(0, 0)] - 0.5) <= 1e-10, "P|z|² constant term")
        c.check((p - half).norm2() ** 0.5 <= 1e-10, "P|z|² residual")
        worst = 0.0
        for k in range(51):
            r = cauchy_annulus_ratio(DiscFunction.from_monomials({(k, 0): 1.0}, K=max(32, k + 1)))
            worst = max(worst, abs(r * (1 - 4.0 ** -(k + 1)) - 1))
        c.check(worst <= 1e-8, f"Cauchy ratio error {worst:.2e}")
        ratios = [false_inequality_ratio(m) for m in range(11)]
        closed = max(abs(r * PI * 4 ** m - 1) for m, r in enumerate(ratios))
        decay = max(abs(ratios[m + 1] / ratios[m] - 0.25) for m in range(10))
        c.check(closed <= 1e-8, f"4^-m/π error {closed:.2e}")
        c.check(decay <= 1e-8, f"decay factor error {decay:.2e}")
        c.note(f"Cauchy {worst:.1e}, false ratio {closed:.1e}, decay ¼ ± {decay:.1e}")


def test_criterion_08_uncertainty_properties(capsys):
    with Criterion(capsys, 8, "uncertainty property suite", 60.0) as c:
        worst = min(uncertainty_ratio(f, v) for f in disc_family(100) for v in standard_potentials())
        c.check(worst >= 0.05, f"family minimum {worst:.4f}")
        rng = np.random.default_rng(8)
        proj = 0.0
        for _ in range(20):
            f, g = random_disc_function(rng), random_disc_function(rng)
            pf, pg = bergman_project(f), bergman_project(g)
            proj = max(proj,
                       (bergman_project(pf) - pf).norm2() ** 0.5,
                       abs(pf.inner(g) - f.inner(pg)),
                       abs(f.norm2() - pf.norm2() - (f - pf).norm2()) / f.norm2())
        c.check(proj <= 1e-10, f"projection defect {proj:.2e}")
        trunc = 0.0
        for a, b, cc in [(0.7, -0.3, 0.5), (1.5, 0.2, -1.0), (-0.4, 1.1, 0.0)]:
            f16 = DiscFunction.exponential(a, b, cc, K=16, J=16)
            f32 = DiscFunction.exponential(a, b, cc, K=32, J=32)
            for v in standard_potentials():
                r16, r32 = uncertainty_ratio(f16, v), uncertainty_ratio(f32, v)
                trunc = max(trunc, abs(r16 / r32 - 1))
        c.check(trunc <= 1e-6, f"truncation drift {trunc:.2e}")
        c.note(f"family min {worst:.4f}, projection {proj:.1e}, truncation {trunc:.1e}")


def test_criterion_09_energy_coercivity(capsys):
    with Criterion(capsys, 9, "energy coercivity certificate", 120.0) as c:
        cal = weighted_energy({(1, 0), (0, 1)}, TestFunction("gaussian_radial"))
        f_exact = 2 * (PI / 16) * (PI / 4) + 2 * (PI / 4) ** 2
        mass_exact = 9 * (PI / 4) ** 2
        err = max(abs(cal.f_value / f_exact - 1), abs(cal.mu_mass / mass_exact - 1))
        c.check(err <= 1e-8, f"calibration error {err:.2e}")
        fam = standard_family(20)
        certs = []
        for gamma in (GAMMA_FIG, ExponentSet([(2, 0), (0, 2), (1, 1)])):
            c1 = coercivity_certificate(gamma, fam)
            c2 = coercivity_certificate(gamma, fam, QuadratureSpec().refined())
            c.check(c1 > 0, f"certificate {c1} for {sorted(gamma)}")
            c.check(abs(c2 / c1 - 1) <= 1e-6, f"self-convergence {abs(c2 / c1 - 1):.1e}")
            certs.append(f"{c1:.6g}")
        c.note(f"calibration {err:.1e}, certificates {', '.join(certs)}")


def test_criterion_10_admissibility(capsys):
    with Criterion(capsys, 10, "admissibility", 60.0) as c:
        rho0 = rho_by_definition({(2, 0), (0, 2)}, (0, 0))
        c.check(abs(rho0 - 0.5) <= 1e-10, f"ρ(0) = {rho0!r}")
        widths = []
        for gamma in TEST_GAMMAS:
            bands = []
            for res in (64, 128):
                s = np.geomspace(1e-2, 1.0, res)
                bands.append(comparability_band(gamma, *np.meshgrid(s, s), samples=128))
            (a, b), (lo, hi) = bands
            c.check(lo > 0 and math.isfinite(hi), f"ρ band for {sorted(gamma)} degenerate")
            drift = abs((hi / lo) / (b / a) - 1)
            c.check(drift <= 0.05, f"ρ band for {sorted(gamma)} moved {drift:.1%}")
            d1, d2 = doubling_constant(gamma, 256), doubling_constant(gamma, 1024)
            c.check(math.isfinite(d2) and d2 <= doubling_cap(gamma), f"doubling {d2:g}")
            c.check(abs(d2 / d1 - 1) <= 0.05, f"doubling moved {d1:g} -> {d2:g}")
            widths.append(f"{hi / lo:.3g}")
        k1 = kappa_radius_check(4, Fraction(9, 4), 256)
        k2 = kappa_radius_check(4, Fraction(9, 4), 1024)
        c.check(math.isfinite(k2) and abs(k2 / k1 - 1) <= 0.05, f"κ constant {k1:g} -> {k2:g}")
        c.note(f"ρ(0)=½, band widths {', '.join(widths)}, κ constant {k2:.4g}")
