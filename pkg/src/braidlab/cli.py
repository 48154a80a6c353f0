"""braidlab command line: spectrum, ladder, verify, qgroup, algebra.

Exit status: 0 all checks pass, 1 a check failed, 2 configuration error,
3 singular quantum-group level.
"""

import argparse
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from braidlab import cyclotomic as cy
from braidlab import fock, mixed, qgroup
from braidlab import report as rp
from braidlab.braid import (
    Generic,
    RootOfUnity,
    braid_matrix,
    check_braided_product,
    check_exchange,
    check_yang_baxter,
    intertwiner,
    minimal_order,
    random_generic,
)
from braidlab.cyclotomic import DEFAULT_TOL
from braidlab.graded import GradedOperator, check_gl11, gl11_generators, residual

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_SINGULAR = 0, 1, 2, 3

DEFAULT_PARTICLES = {"spectrum": "1..6", "ladder": "3", "verify": "2", "qgroup": "1..4", "algebra": "2"}
GENERIC_ORDER_CAP = 100


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    levels: list
    t: list
    particles: list
    n_max: int
    mode: str
    tol: float
    format: str
    seed: int
    out: str

    def echo(self):
        d = asdict(self)
        d.pop("out")
        return d


# ------------------------------------------------------------------ parsing

def parse_levels(text):
    """"1/3", "1/3,2/5" or a range over s such as "1/3..9" (non-coprime s skipped)."""
    levels = []
    for part in text.split(","):
        part = part.strip()
        try:
            r, s = part.split("/")
            if ".." in s:
                lo, hi = (int(x) for x in s.split(".."))
                r = int(r)
                levels += [(r, k) for k in range(lo, hi + 1) if r < k and gcd(r, k) == 1]
                continue
            r, s = int(r), int(s)
        except ValueError:
            raise ConfigError(f"bad level {part!r}; expected r/s") from None
        try:
            RootOfUnity(r, s)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        levels.append((r, s))
    if not levels:
        raise ConfigError(f"level spec {text!r} is empty")
    return levels


def parse_particles(text):
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split(".."))
            out = list(range(lo, hi + 1))
        else:
            out = [int(text)]
    except ValueError:
        raise ConfigError(f"bad particle spec {text!r}; expected N or a..b") from None
    if not out or min(out) < 1:
        raise ConfigError("particle counts must be >= 1")
    return out


def parse_t(text, mode):
    """"re,im" -> [re, im] strings kept for the config echo."""
    if text.startswith("random"):
        if mode == "exact":
            raise ConfigError("random t needs --mode float")
        return text
    try:
        re_, im_ = text.split(",")
        Fraction(re_), Fraction(im_)
    except ValueError:
        raise ConfigError(f"bad t {text!r}; expected re,im") from None
    if Fraction(re_) == 0 and Fraction(im_) == 0:
        raise ConfigError("t must be nonzero")
    return [re_.strip(), im_.strip()]


def make_levels(cfg):
    """Level objects for every requested r/s and t, in config order."""
    exact = cfg.mode == "exact"
    out = [RootOfUnity(r, s, exact) for r, s in cfg.levels]
    for spec in cfg.t:
        if isinstance(spec, str):
            # random or random:K
            k = int(spec.split(":")[1]) if ":" in spec else 1
            rng = np.random.default_rng(cfg.seed)
            out += [random_generic(rng) for _ in range(k)]
            continue
        re_, im_ = (Fraction(x) for x in spec)
        if exact:
            t = cy.as_exact(re_) + cy.root_of_unity(1, 4) * im_
            out.append(Generic(t))
        else:
            out.append(Generic(complex(float(re_), float(im_))))
    return out


def label(p):
    if isinstance(p, RootOfUnity):
        return str(p)
    t = cy.approx(p.t)
    return f"t={t.real:.6g},{t.imag:.6g}"


def thread_count():
    raw = os.environ.get("BRAIDLAB_THREADS", "")
    if not raw:
        return min(4, os.cpu_count() or 1)
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"BRAIDLAB_THREADS={raw!r} is not an integer") from None
    if n < 1:
        raise ConfigError("BRAIDLAB_THREADS must be >= 1")
    return n


def run_jobs(fn, jobs):
    """Run fn over jobs on at most BRAIDLAB_THREADS workers; flatten results."""
    workers = min(thread_count(), max(1, len(jobs)))
    if workers == 1:
        results = [fn(j) for j in jobs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(fn, jobs))
    return [c for group in results for c in group]


def _ok(res, cfg):
    return res == 0 if cfg.mode == "exact" else res <= cfg.tol


# ------------------------------------------------------------------ commands

def _ladder_checks(p, N, cfg, tag):
    n_max = cfg.n_max if cfg.n_max is not None else N + 1
    lad = fock.ladder(p, N, n_max, cfg.tol)
    H = fock.hamiltonian(N, p.exact)
    res = 0.0
    for e, v in zip(lad.entries, lad.states):
        if not e.vanished:
            res = max(res, residual((H @ v).amplitudes, (v * e.n).amplitudes))
    expected = fock.predicted_energies(p, N, cfg.tol)
    expected = [e for e in expected if e <= n_max]
    eigen = all(e.vanished or e.energy == e.n for e in lad.entries)
    supersel = all(e.superselected for e in lad.entries)
    stays_zero = all(e.vanished for e in lad.entries[lad.truncation_index:]) if lad.truncation_index else True
    plateau = lad.truncation_index - 1 if lad.truncation_index is not None and lad.truncation_index <= N else None
    payload = {
        "level": p.describe(),
        "particles": N,
        "energies": lad.energies,
        "expected_energies": expected,
        "plateau": plateau,
        "truncation_index": lad.truncation_index,
        "ladder": [
            {"n": e.n, "norm2": rp.scalar(e.norm2), "energy": e.energy,
             "vanished": e.vanished, "superselected": e.superselected}
            for e in lad.entries
        ],
    }
    passed = lad.energies == expected and eigen and supersel and stays_zero and _ok(res, cfg)
    return [rp.Check(f"{tag}[{label(p)}][N={N:02d}]", passed, res, payload)]


def cmd_spectrum(cfg, levels):
    jobs = [(p, N) for p in levels for N in cfg.particles]
    return run_jobs(lambda j: _ladder_checks(j[0], j[1], cfg, "spectrum"), jobs)


def cmd_ladder(cfg, levels):
    jobs = [(p, N) for p in levels for N in cfg.particles]
    return run_jobs(lambda j: _ladder_checks(j[0], j[1], cfg, "ladder"), jobs)


def _verify_level(p, cfg):
    name = f"verify[{label(p)}]"
    checks = []
    B = braid_matrix(p)
    yb = check_yang_baxter(B)
    checks.append(rp.Check(f"{name}.yang_baxter", _ok(yb, cfg), yb))

    expected = fock.exchange_order(p, cfg.tol)
    if isinstance(p, RootOfUnity):
        cap = 4 * p.s
    else:
        cap = GENERIC_ORDER_CAP
        if expected == 1:
            expected = None  # t = -1: B is a Jordan block, never the identity
    if not p.exact:
        # float powers drift; compare with the tolerance instead of exactly
        order = _float_order(B, cap, cfg.tol)
    else:
        order = minimal_order(B, cap)
    if expected is not None and expected > cap:
        expected = None
    payload = {"order": order, "expected_order": expected, "cap": cap}
    if order is None:
        payload["note"] = f"no finite order <= {cap}"
    checks.append(rp.Check(f"{name}.braid_order", order == expected, None, payload))

    W = intertwiner(p)
    gamma = gl11_generators(p.exact)[2]
    w = W.mat
    checks.append(rp.Check(
        f"{name}.exchange", check_exchange(W, gamma, p, cfg.tol), None,
        {"W_diagonal": [rp.scalar(w[0, 0]), rp.scalar(w[1, 1])]},
    ))
    checks.append(rp.Check(f"{name}.braided_product", check_braided_product(p, cfg.tol)))
    return checks


def _float_order(B, cap, tol):
    I = GradedOperator.identity(B.particles, False)
    P = B
    for k in range(1, cap + 1):
        if P.equals(I, tol):
            return k
        P = P @ B
    return None


def cmd_verify(cfg, levels):
    exact = cfg.mode == "exact"
    bad = check_gl11(*gl11_generators(exact), tol=cfg.tol)
    checks = [rp.Check("verify.gl11", not bad, None, {"violations": bad})]
    return checks + run_jobs(lambda p: _verify_level(p, cfg), levels)


def _qgroup_level(p, cfg):
    if not isinstance(p, RootOfUnity):
        raise ConfigError("qgroup needs a root-of-unity level (--level r/s)")
    name = f"qgroup[{label(p)}]"
    eta = qgroup.eta_for_level(p.r, p.s)
    cutoff = cfg.n_max if cfg.n_max is not None else max(cfg.particles) + 1
    try:
        rep = qgroup.build_rep(eta if p.exact else complex(eta), 0, max(cutoff, 2))
    except qgroup.SingularLevelError as exc:
        return [rp.Check(f"{name}.singular_level", False, None, {"level": p.describe()},
                         error=f"singular level: {exc}")]
    checks = []
    rels = qgroup.relation_residuals(rep)
    res = max(rels.values())
    checks.append(rp.Check(f"{name}.relations", _ok(res, cfg), res, {"residuals": rels, "cutoff": rep.cutoff}))
    co = max(qgroup.coassociativity_residual(rep, "Fp"), qgroup.coassociativity_residual(rep, "H"))
    checks.append(rp.Check(f"{name}.coassociativity", _ok(co, cfg), co))
    ident = qgroup.identification_residual(p)
    checks.append(rp.Check(f"{name}.identification", _ok(ident, cfg), ident))
    for N in cfg.particles:
        ok, info = qgroup.match_spectrum(p, N, cfg.tol)
        info = {"match": ok, **{k: v for k, v in info.items() if k != "level"}}
        checks.append(rp.Check(f"{name}.match_spectrum[N={N:02d}]", ok, None, info))
    return checks


def cmd_qgroup(cfg, levels):
    return run_jobs(lambda p: _qgroup_level(p, cfg), levels)


def _algebra_level(p, N, cfg):
    name = f"algebra[{label(p)}][N={N:02d}]"
    table, violations = mixed.verify_heisenberg(p, N, cfg.tol)
    angles, kinds, coeffs = {}, {}, {}
    for (I, J), c in sorted(table.entries.items()):
        key = f"{I},{J}"
        if c is None:
            kinds[key] = "unresolved"
            continue
        angles[key] = rp.angle(c.angle)
        kinds[key] = c.kind
        if c.kind == "central":
            coeffs[key] = rp.scalar(c.coefficient)
    checks = [rp.Check(f"{name}.heisenberg", not violations, None,
                       {"violations": violations, "angles": angles, "classification": kinds,
                        "central_coefficients": coeffs})]
    ok, bad = mixed.check_meta_abelian_mixed(p, N, cfg.tol, table)
    checks.append(rp.Check(f"{name}.mixed_metaabelian", ok, None, {"violations": [list(t) for t in bad]}))
    ordinary = mixed.check_meta_abelian_ordinary(p, N, cfg.tol)
    witness = mixed.witness_triple_value(p, N)
    must_fail = isinstance(p, RootOfUnity) and p.s >= 3
    checks.append(rp.Check(
        f"{name}.ordinary_metaabelian_fails", bool(ordinary) or not must_fail, None,
        {
            "violation_count": len(ordinary),
            "violations": [list(t) for t in ordinary],
            "asserted": must_fail,
            "witness_triple": {
                "triple": list(mixed.WITNESS_TRIPLE),
                "is_zero": witness.is_zero() if witness.exact else witness.is_zero(cfg.tol),
                "max_abs": residual(witness.mat),
                "value": rp.matrix(witness.mat),
            },
        },
    ))
    return checks


def cmd_algebra(cfg, levels):
    if min(cfg.particles) < 2:
        raise ConfigError("algebra needs --particles >= 2")
    jobs = [(p, N) for p in levels for N in cfg.particles]
    return run_jobs(lambda j: _algebra_level(j[0], j[1], cfg), jobs)


COMMANDS = {
    "spectrum": cmd_spectrum,
    "ladder": cmd_ladder,
    "verify": cmd_verify,
    "qgroup": cmd_qgroup,
    "algebra": cmd_algebra,
}


# ------------------------------------------------------------------ entry

def build_parser():
    parser = argparse.ArgumentParser(prog="braidlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "spectrum": "multiparticle energy sets and truncation plateaus",
        "ladder": "coproduct ladder states with norms and energies",
        "verify": "gl(1|1), Yang-Baxter, braid order and intertwiner checks",
        "qgroup": "quantum-group relations, coproduct tower and spectrum match",
        "algebra": "mixed-bracket closing angles and metaabelian checks",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text)
        p.add_argument("--level", action="append", default=[], help="r/s, comma list, or r/a..b range over s")
        p.add_argument("--t", action="append", default=[], help="generic t as re,im (or random[:K] in float mode)")
        p.add_argument("--particles", help="N or a..b")
        p.add_argument("--n-max", type=int, help="ladder length / per-slot cutoff")
        p.add_argument("--mode", choices=["exact", "float"], default="exact")
        p.add_argument("--tol", type=float, help="float-mode tolerance (default 1e-9); exact mode allows only 0")
        p.add_argument("--format", choices=sorted(rp.FORMATTERS), default="json")
        p.add_argument("--seed", type=int, default=0, help="seed for random t")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--timing", action="store_true", help="include wall-clock duration (breaks byte-identity)")
    return parser


def make_config(args):
    if args.mode == "exact":
        if args.tol not in (None, 0):
            raise ConfigError("exact mode forbids a nonzero tolerance")
        tol = 0
    else:
        tol = DEFAULT_TOL if args.tol is None else args.tol
        if tol <= 0:
            raise ConfigError("float mode needs a positive tolerance")
    if args.n_max is not None and args.n_max < 0:
        raise ConfigError("--n-max must be >= 0")
    levels = [lv for text in args.level for lv in parse_levels(text)]
    ts = [parse_t(text, args.mode) for text in args.t]
    if not levels and not ts:
        raise ConfigError("give at least one --level or --t")
    particles = parse_particles(args.particles or DEFAULT_PARTICLES[args.command])
    return RunConfig(args.command, levels, ts, particles, args.n_max, args.mode, tol,
                     args.format, args.seed, args.out)


def _glue_values(argv):
    # argparse reads "--t -1,0" as two options; glue the value on
    out, it = [], iter(argv)
    for tok in it:
        if tok in ("--t", "--level", "--particles"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_values(argv))
    start = time.perf_counter()
    try:
        cfg = make_config(args)
        levels = make_levels(cfg)
        checks = COMMANDS[cfg.command](cfg, levels)
    except (ConfigError, ValueError) as exc:
        print(f"braidlab: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    report = rp.Report(cfg.command, cfg.echo(), checks)
    if args.timing:
        report.duration = time.perf_counter() - start
    text = rp.FORMATTERS[cfg.format](report)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if any(c.name.endswith(".singular_level") for c in checks):
        for c in checks:
            if c.error:
                print(f"braidlab: {c.error}", file=sys.stderr)
        return EXIT_SINGULAR
    return EXIT_OK if report.all_passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
