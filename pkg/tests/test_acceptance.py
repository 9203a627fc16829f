"""Acceptance criteria, one test each.

Run ``pytest tests/test_acceptance.py`` for the PASS/FAIL summary printed
at the end of the session.
"""

import json
import math
import time

import numpy as np
import pytest
from helpers import (
    belief_capacity,
    belief_lower_expectation,
    naive_mobius,
    naive_zeta,
    permutation_vertices,
    random_capacity,
    random_credal,
    random_masses,
    pair_valued_capacity,
    textbook_mmd2_unbiased,
)

from iipm import (
    ContaminationModel,
    CredalSet,
    FiniteSpace,
    FunctionFamily,
    KernelSpec,
    additive_capacity,
    capacity_from_credal,
    choquet_integral,
    contaminated_kantorovich_check,
    contaminated_mmd_sq,
    epsilon_contamination,
    gh_measure,
    iipm_bruteforce,
    ltv,
    mmi_lin,
    mmi_tv,
    mobius_forward,
    mobius_inverse,
    singleton_l1,
)
from iipm.capacity import MassFunction, mobius_transform, zeta_transform
from iipm.harness.cli import main
from iipm.harness.data import load_predictions, write_predictions
from iipm.harness.pipeline import RunConfig, run_score
from iipm.harness.report import spearman
from iipm.harness.synth import synth_generate

pytestmark = pytest.mark.acceptance


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def _rng(tag: int):
    return np.random.default_rng(1000 + tag)


def test_pair_valued_distances():
    """Lower TV of the two pair-valued capacities is 1/6, singleton L1 is 0 (< 1 ms)."""
    P1, P2 = pair_valued_capacity(0.5), pair_valued_capacity(1 / 3)
    ltv(P1, P2), singleton_l1(P1, P2)  # warm-up
    with Timer() as t:
        d_tv = ltv(P1, P2).value
        d_l1 = singleton_l1(P1, P2)
    assert abs(d_tv - 1 / 6) <= 1e-12
    assert abs(d_l1) <= 1e-12
    assert t.elapsed < 1e-3


def test_contamination_imprecision_equals_rate():
    """MMI-TV and MMI-Lin of an eps-contamination model both equal eps on 200 cases (< 1 s)."""
    rng = _rng(1)
    with Timer() as t:
        for _ in range(200):
            K = int(rng.integers(2, 9))
            eps = float(rng.uniform())
            p = rng.dirichlet(np.full(K, rng.uniform(0.2, 3.0)))
            lower = epsilon_contamination(ContaminationModel(FiniteSpace.of_size(K), p, eps))
            assert abs(mmi_tv(lower).value - eps) <= 1e-12
            assert abs(mmi_lin(lower) - eps) <= 1e-12
    assert t.elapsed < 1.0


def test_linear_bound_dominates_exact():
    """MMI-TV <= MMI-Lin + 1e-12 on 1000 credal sets, strictly on at least one (< 10 s)."""
    rng = _rng(2)
    strict = 0
    with Timer() as t:
        for _ in range(1000):
            K = int(rng.integers(2, 9))
            m = int(rng.integers(1, 11))
            lower = capacity_from_credal(random_credal(rng, K, m))
            tv, lin = mmi_tv(lower).value, mmi_lin(lower)
            assert tv <= lin + 1e-12
            strict += tv < lin - 1e-9
    assert strict > 0
    assert t.elapsed < 10.0


def test_imprecision_axioms():
    """Axioms: range [0, 1], monotone under generator supersets (200 pairs), zero on 200 precise models."""
    rng = _rng(3)
    measures = {"mmi_tv": lambda nu: mmi_tv(nu).value, "mmi_lin": mmi_lin}
    for _ in range(200):
        K = int(rng.integers(2, 9))
        G = rng.dirichlet(np.full(K, rng.uniform(0.2, 3.0)), size=int(rng.integers(2, 11)))
        cut = int(rng.integers(1, G.shape[0]))
        small = capacity_from_credal(CredalSet.from_rows(G[:cut]))
        big = capacity_from_credal(CredalSet.from_rows(G))
        for name, fn in measures.items():
            a, b = fn(small), fn(big)
            assert 0.0 <= a <= 1.0 and 0.0 <= b <= 1.0, name
            assert b >= a - 1e-12, name
    for _ in range(200):
        K = int(rng.integers(1, 9))
        P = additive_capacity(rng.dirichlet(np.full(K, rng.uniform(0.2, 3.0))))
        for name, fn in measures.items():
            assert abs(fn(P)) <= 1e-12, name


def test_contaminated_kantorovich_identity():
    """Lipschitz-family IIPM equals (1 - eps) W1 on 100 line instances incl. Dirac pair at 0.3 (< 5 s)."""
    rng = _rng(4)
    with Timer() as t:
        res = contaminated_kantorovich_check([1.0, 0.0], [0.0, 1.0], [0.0, 1.0], 0.3)
        assert abs(res.iipm_value - 0.7) <= 1e-10 and abs(res.identity_value - 0.7) <= 1e-10
        for _ in range(99):
            K = int(rng.integers(1, 11))
            x = np.sort(rng.uniform(-5, 5, size=K))
            while K > 1 and np.any(np.diff(x) <= 0):
                x = np.sort(rng.uniform(-5, 5, size=K))
            p, q = rng.dirichlet(np.ones(K), size=2)
            res = contaminated_kantorovich_check(p, q, x, float(rng.uniform()))
            assert abs(res.iipm_value - res.identity_value) <= 1e-10
    assert t.elapsed < 5.0


def test_choquet_lower_expectation_bounds():
    """Choquet of the envelope <= credal minimum (500 sets); equality to 1e-10 on 200 belief functions."""
    rng = _rng(5)
    for _ in range(500):
        K = int(rng.integers(2, 7))
        C = random_credal(rng, K, int(rng.integers(1, 11)))
        f = rng.normal(size=K)
        assert choquet_integral(f, capacity_from_credal(C)) <= float((C.generators @ f).min()) + 1e-12
    for _ in range(200):
        K = int(rng.integers(2, 6))
        masses = random_masses(rng, K)
        bel = belief_capacity(masses, K)
        f = rng.normal(size=K)
        value = choquet_integral(f, bel)
        # the core's extreme points are the permutation marginals of a belief function
        assert abs(value - float((permutation_vertices(bel) @ f).min())) <= 1e-10
        assert abs(value - belief_lower_expectation(f, masses, K)) <= 1e-10


def test_mobius_transforms():
    """Möbius roundtrip and fast-vs-naive transforms agree to 1e-12 for K <= 8; GH of the pair table is 1.5 - 0.5 log2 3."""
    rng = _rng(6)
    for K in range(1, 9):
        for _ in range(3):
            nu = random_capacity(rng, K)
            m = mobius_inverse(nu)
            np.testing.assert_allclose(m.mass, naive_mobius(nu.values, K), rtol=0, atol=1e-12)
            np.testing.assert_allclose(mobius_forward(m).capacity.values, nu.values, rtol=0, atol=1e-12)
            masses = random_masses(rng, K)
            np.testing.assert_allclose(zeta_transform(masses, K), naive_zeta(masses, K), rtol=0, atol=1e-12)
            back = mobius_transform(mobius_forward(MassFunction(FiniteSpace.of_size(K), masses)).capacity.values, K)
            np.testing.assert_allclose(back, masses, rtol=0, atol=1e-12)
    assert abs(gh_measure(pair_valued_capacity(0.5)) - (1.5 - 0.5 * math.log2(3))) <= 1e-12


def test_contaminated_mmd_estimator():
    """Uncontaminated estimate matches textbook unbiased MMD^2 on 50 sample sets; constant data gives (delta - eps)^2."""
    rng = _rng(7)
    for _ in range(50):
        d = int(rng.integers(1, 4))
        X = rng.normal(size=(int(rng.integers(2, 15)), d))
        Z = rng.normal(rng.uniform(-1, 1), 1.0, size=(int(rng.integers(2, 15)), d))
        bw = float(rng.uniform(0.3, 3.0))
        assert abs(contaminated_mmd_sq(X, Z, 0.0, 0.0, KernelSpec(bw)) - textbook_mmd2_unbiased(X, Z, bw)) <= 1e-12
    for _ in range(20):
        eps, delta = rng.uniform(size=2)
        X = np.full((int(rng.integers(2, 8)), 2), 1.5)
        Z = np.full((int(rng.integers(2, 8)), 2), 1.5)
        assert abs(contaminated_mmd_sq(X, Z, eps, delta, KernelSpec(1.0)) - (delta - eps) ** 2) <= 1e-12


def test_iipm_pseudometric_laws():
    """Symmetry and triangle inequality of the brute-force IIPM, 16-member family, 100 triples (slack >= -1e-12)."""
    rng = _rng(8)
    for _ in range(100):
        K = int(rng.integers(1, 7))
        F = FunctionFamily(FiniteSpace.of_size(K), rng.normal(size=(16, K)))
        a, b, c = (random_capacity(rng, K) for _ in range(3))
        ab = iipm_bruteforce(F, a, b).value
        assert ab == iipm_bruteforce(F, b, a).value
        slack = iipm_bruteforce(F, a, c).value + iipm_bruteforce(F, c, b).value - ab
        assert slack >= -1e-12


def test_desk_scale_selective_classification(tmp_path):
    """Seed-0 synthetic ensemble (n=2000, K=5, m=10): exact measures beat random AUC by 0.05, Spearman(MMI, GH) in [0.9, 1) (< 60 s)."""
    with Timer() as t:
        table = synth_generate(0, 2000, 5, 10, "mixed")
        config = RunConfig(measures=("mmi", "mmi-lin", "gh", "ediff", "random"), seed=0, output_dir=str(tmp_path))
        result = run_score(table, config)
    auc = {name: c.auc for name, c in result.curves.items()}
    for name in ("mmi", "mmi-lin", "gh"):
        assert auc[name] >= auc["random"] + 0.05, (name, auc)
    rho = spearman(result.score_vectors["mmi"], result.score_vectors["gh"])
    assert 0.9 <= rho < 1.0
    assert t.elapsed < 60.0


def test_large_k_guard(tmp_path):
    """K=100, n=500: linear-time measures finish in < 10 s; exact measures flagged skipped with exit code 0."""
    preds = tmp_path / "wide.csv"
    write_predictions(synth_generate(0, 500, 100, 10), preds)
    with Timer() as t:
        code = main(["score", "--input", str(preds), "--output", str(tmp_path / "out")])
    assert code == 0
    report = json.loads((tmp_path / "out" / "report.json").read_text())
    assert report["measures"]["mmi"]["skipped"] and report["measures"]["gh"]["skipped"]
    for name in ("mmi-lin", "ediff"):
        assert not report["measures"][name]["skipped"]
        assert len(report["measures"][name]["accuracies"]) == 19
    assert load_predictions(preds).K == 100
    assert t.elapsed < 10.0


def test_cli_determinism(tmp_path):
    """Two identical CLI pipelines produce byte-identical JSON and CSV."""
    outputs = []
    for run in ("a", "b"):
        preds = tmp_path / "preds.csv"  # regenerated in place, same config both times
        assert main(["synth", "--n", "200", "--k", "4", "--m", "6", "--seed", "7", "--output", str(preds)]) == 0
        out = tmp_path / f"out_{run}"
        args = ["score", "--input", str(preds), "--output", str(out), "--seed", "3",
                "--measures", "mmi,mmi-lin,gh,ediff,random"]
        assert main(args) == 0
        outputs.append(((out / "report.json").read_bytes(), (out / "ar_curves.csv").read_bytes(), preds.read_bytes()))
    assert outputs[0] == outputs[1]
