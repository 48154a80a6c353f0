"""Acceptance suite: eleven criteria, one PASS/FAIL line each.

Run with pytest (lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""

import functools
import os
import subprocess
import sys
import time
from fractions import Fraction
from math import gcd

import numpy as np
import sympy

from braidlab import cyclotomic as cy
from braidlab.braid import Generic, RootOfUnity, braid_matrix, braid_order, check_yang_baxter, minimal_order, random_generic
from braidlab.fock import creation_total, ladder
from braidlab.graded import check_gl11, gl11_generators
from braidlab.mixed import (
    check_meta_abelian_mixed,
    check_meta_abelian_ordinary,
    generator_family,
    mixed_bracket,
    solve_angle,
    verify_heisenberg,
    witness_triple_value,
    wrap,
)
from braidlab.qgroup import (
    SingularLevelError,
    build_rep,
    check_relations,
    coassociativity_residual,
    eta_for_level,
    match_spectrum,
)

RESULTS = {}


def record(n, title, ok, detail, elapsed, limit=None):
    within = limit is None or elapsed < limit
    status = "PASS" if ok and within else "FAIL"
    budget = f" (limit {limit:g} s)" if limit else ""
    line = f"criterion {n:2d} {status}: {title}; {detail}; {elapsed:.2f} s{budget}"
    RESULTS[n] = line
    print(line)
    assert ok, line
    assert within, f"criterion {n} exceeded its {limit} s budget: {elapsed:.2f} s"


def coprime(s):
    return [r for r in range(1, s) if gcd(r, s) == 1]


def popcounts(dim):
    return np.array([bin(i).count("1") for i in range(dim)])


def test_c01_gl11_brackets():
    t0 = time.perf_counter()
    bad = check_gl11(*gl11_generators(exact=True))
    record(1, "gl(1|1) brackets exact", bad == [], f"violations={bad}", time.perf_counter() - t0, 1)


def test_c02_yang_baxter():
    t0 = time.perf_counter()
    exact = max(check_yang_baxter(braid_matrix(RootOfUnity(r, s))) for s in range(2, 13) for r in coprime(s))
    rng = np.random.default_rng(2024)
    floats = max(check_yang_baxter(braid_matrix(random_generic(rng))) for _ in range(20))
    ok = exact == 0.0 and floats <= 1e-12
    record(2, "Yang-Baxter", ok, f"exact residual={exact}, float max={floats:.2e}", time.perf_counter() - t0, 1)


def test_c03_braid_order():
    t0 = time.perf_counter()
    orders = {s: braid_order(s) for s in range(2, 13)}
    ok = all(v == (True, s) for s, v in orders.items())
    minus_one = minimal_order(braid_matrix(Generic(cy.as_exact(-1))), 100)
    ok = ok and minus_one is None
    record(3, "braid order", ok, f"orders={[v[1] for v in orders.values()]}, t=-1 order<=100: {minus_one}",
           time.perf_counter() - t0, 1)


def _ladder_ok(p, N, expected_top):
    rep = ladder(p, N)
    energies = []
    weights = popcounts(2**N)
    for e, v in zip(rep.entries, rep.states):
        if e.vanished:
            continue
        support = v.support()
        # exact eigenvector of the occupation operator with eigenvalue n
        if not (weights[support] == e.n).all():
            return False
        energies.append(e.n)
    return energies == list(range(expected_top + 1))


def test_c04_truncation():
    t0 = time.perf_counter()
    failures = []
    for s in range(2, 7):
        for N in range(1, 9):
            top = N if N < s else s - 1
            if not _ladder_ok(RootOfUnity(1, s), N, top):
                failures.append((s, N))
    record(4, "spectrum truncation", not failures, f"failures={failures}", time.perf_counter() - t0, 30)


def test_c05_untruncated():
    t0 = time.perf_counter()
    failures = []
    for t in (-1, 2):
        p = Generic(cy.as_exact(t))
        for N in range(1, 9):
            if not _ladder_ok(p, N, N):
                failures.append((t, N))
    record(5, "untruncated spectrum t=-1, t=2", not failures, f"failures={failures}", time.perf_counter() - t0, 10)


def test_c06_r_independence():
    t0 = time.perf_counter()
    mismatches = []
    for s in range(2, 10):
        for N in range(1, 9):
            seen = set()
            for r in coprime(s):
                rep = ladder(RootOfUnity(r, s), N)
                seen.add((rep.truncation_index, tuple(rep.energies)))
            if len(seen) != 1:
                mismatches.append((s, N))
    record(6, "r-independence", not mismatches, f"mismatches={mismatches}", time.perf_counter() - t0)


def test_c07_nilpotency():
    t0 = time.perf_counter()
    failures = []
    for s in range(2, 6):
        for N in range(1, 7):
            m = min(s, N + 1)
            Q = creation_total(RootOfUnity(1, s), N)
            below = Q.power(m - 1)
            if below.is_zero() or not (below @ Q).is_zero():
                failures.append((s, N))
    record(7, "nilpotency index min(s, N+1)", not failures, f"failures={failures}", time.perf_counter() - t0)


@functools.lru_cache(maxsize=None)
def lowering_oracle():
    """Check the recursion-built F_- against a sympy solve of the
    anticommutator equations; returns (ok, detail)."""
    eta, lam = sympy.symbols("eta lambda")
    M = 5
    c = sympy.symbols(f"c1:{M + 1}")
    Fp, Fm = sympy.zeros(M + 1), sympy.zeros(M + 1)
    for n in range(M):
        Fp[n + 1, n] = 1
        Fm[n, n + 1] = c[n]
    anti = Fp * Fm + Fm * Fp
    target = [sympy.sinh(eta * (lam + sympy.Rational(n, 2))) / sympy.sinh(2 * eta) for n in range(M)]
    sol = sympy.solve([anti[n, n] - target[n] for n in range(M)], c, dict=True)[0]
    # symbolic substitution back into the relation
    anti_sol = anti.subs(sol)
    symbolic_ok = all(sympy.simplify(anti_sol[n, n] - target[n]) == 0 for n in range(M))
    worst = 0.0
    for r, s in [(1, 3), (2, 5), (1, 6), (3, 7), (4, 9)]:
        for lam_v in (Fraction(0), Fraction(1, 3)):
            e = eta_for_level(r, s)
            rep = build_rep(e, lam_v, M)
            subs = {eta: sympy.I * sympy.pi * sympy.Rational(e.ratio.numerator, e.ratio.denominator),
                    lam: sympy.Rational(lam_v.numerator, lam_v.denominator)}
            for n in range(1, M + 1):
                ref = complex(sympy.N(sol[c[n - 1]].subs(subs), 30))
                worst = max(worst, abs(rep.coeffs[n].to_complex() - ref))
    ok = symbolic_ok and worst < 1e-12
    return ok, f"symbolic substitution {'ok' if symbolic_ok else 'failed'}, max deviation={worst:.1e}"


def test_c09_lowering_oracle():
    # runs before criterion 8, which relies on it
    t0 = time.perf_counter()
    ok, detail = lowering_oracle()
    record(9, "F_- recursion vs symbolic oracle", ok, detail, time.perf_counter() - t0)


def test_c08_quantum_group():
    t0 = time.perf_counter()
    oracle_ok, _ = lowering_oracle()
    problems = []
    for s in (3, 5, 6, 7, 9):
        for r in coprime(s):
            rep = build_rep(eta_for_level(r, s), 0, 5)
            if check_relations(rep) != 0.0:
                problems.append(("relations", r, s))
            if any(coassociativity_residual(rep, name) != 0.0 for name in ("Fp", "Fm", "H")):
                problems.append(("coassociativity", r, s))
            for N in range(1, 5):
                if not match_spectrum(RootOfUnity(r, s), N)[0]:
                    problems.append(("match", r, s, N))
    for s in (2, 4, 8):
        for r in coprime(s):
            try:
                build_rep(eta_for_level(r, s), 0, 3)
                problems.append(("no singular error", r, s))
            except SingularLevelError:
                pass
    ok = oracle_ok and not problems
    record(8, "quantum-group cross-check", ok, f"oracle={'ok' if oracle_ok else 'FAILED'}, problems={problems}",
           time.perf_counter() - t0, 60)


def test_c10_mixed_brackets():
    t0 = time.perf_counter()
    problems = []
    for s in range(2, 13):
        gens = generator_family(RootOfUnity(1, s), 2)
        for k in ("1", "2"):
            up, down = gens["+" + k], gens["-" + k]
            if not (mixed_bracket(up, down, 0).equals(gens["0"]) and mixed_bracket(down, up, 0).equals(gens["0"])):
                problems.append(("central pair", s, k))
            if not (mixed_bracket(up, up, 0).is_zero() and mixed_bracket(down, down, 0).is_zero()):
                problems.append(("square", s, k))
        target = wrap(Fraction(s + 2, 2 * s))
        c = solve_angle(gens["+1"], gens["+2"])
        if c is None or c.kind != "zero" or c.angle != target:
            problems.append(("cross angle", s))
        back = solve_angle(gens["+2"], gens["+1"])
        if back is None or back.angle != wrap(-target):
            problems.append(("reverse cross angle", s))
    for s in range(2, 7):
        for N in range(2, 5):
            table, violations = verify_heisenberg(RootOfUnity(1, s), N)
            if violations:
                problems.append(("table", s, N))
            if not check_meta_abelian_mixed(RootOfUnity(1, s), N, table=table)[0]:
                problems.append(("mixed metaabelian", s, N))
    witness_zero = []
    for s in range(3, 13):
        if not check_meta_abelian_ordinary(RootOfUnity(1, s), 2):
            problems.append(("ordinary metaabelian holds", s))
        witness_zero.append(witness_triple_value(RootOfUnity(1, s)).is_zero())
    detail = f"problems={problems}, quoted triple [G+1,[G+2,G-2]] zero for all s: {all(witness_zero)}"
    record(10, "mixed-bracket suite", not problems, detail, time.perf_counter() - t0, 30)


def test_c11_determinism(tmp_path):
    t0 = time.perf_counter()
    configs = [
        ["spectrum", "--level", "1/3,2/5", "--particles", "1..5"],
        ["verify", "--t", "random:4", "--mode", "float", "--seed", "7"],
        ["qgroup", "--level", "1/5", "--particles", "1..3"],
        ["algebra", "--level", "1/3", "--particles", "2..3"],
    ]
    differing = []
    for argv in configs:
        outs = []
        for threads in ("1", "3"):
            env = dict(os.environ, BRAIDLAB_THREADS=threads)
            for _ in range(2):
                proc = subprocess.run([sys.executable, "-m", "braidlab.cli", *argv],
                                      capture_output=True, env=env, check=False)
                outs.append(proc.stdout)
        if len(set(outs)) != 1 or not outs[0]:
            differing.append(argv[0])
    record(11, "byte-identical JSON", not differing, f"differing={differing}", time.perf_counter() - t0)


if __name__ == "__main__":
    import tempfile

    tests = [v for k, v in list(globals().items()) if k.startswith("test_c")]
    failed = 0
    for fn in tests:
        try:
            if fn is test_c11_determinism:
                fn(tempfile.mkdtemp())
            else:
                fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
