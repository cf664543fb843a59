"""Acceptance suite: one PASS/FAIL line per criterion.

Run directly (`python3 tests/test_acceptance.py`) or through pytest; either
way each criterion prints a single status line, and details of any failure
follow on indented lines.
"""

import itertools
import os
import sys
import time

import pytest

from multistair.classify import RepType, classify_by_form, is_critical, is_weakly_positive, run_comparisons
from multistair.diagram import (contains, corner7, effective_dimension, enumerate_diagrams,
                                from_boxes, from_partition, iter_double_partitions,
                                iter_partitions, parse_double_partition, q4_diagram, star)
from multistair.oracle import FiniteFieldConfig, count_iso_classes, krull_schmidt_count
from multistair.tables import _FLAT_TC, _FLAT_TC_EXTRA, _q4_images, classify_by_table, partition_type
from multistair.tits import evaluate, minimal_nullroots, sos_identity_check, tits_form

JOBS = int(os.environ.get("MULTISTAIR_JOBS", os.cpu_count() or 1))

FINITE_EXCEPTIONS = {(4, 3, 1), (3, 3, 2), (3, 2, 2, 1), (4, 2, 1, 1)}
TC_LIST = {(6, 3), (6, 2, 1), (4, 3, 1), (5, 2, 2), (4, 2, 1, 1), (3, 2, 2, 1),
           (3, 3, 1, 1, 1), (2, 2, 2, 1, 1, 1), (3, 2, 1, 1, 1, 1)}
TNC_LIST = {(5, 4), (5, 5), (4, 4, 1), (3, 3, 2), (3, 3, 3), (3, 2, 2, 2),
            (2, 2, 2, 2, 1), (2, 2, 2, 2, 2)}


def report(n, ok, summary, details=()):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {summary}"
    with _uncaptured():
        print(line)
        for d in details:
            print("    " + d)
    return ok


class _uncaptured:
    """Let status lines through pytest's capture when running under pytest."""

    capman = None

    def __enter__(self):
        if self.capman is not None:
            self.capman.suspend_global_capture(in_=False)

    def __exit__(self, *exc):
        if self.capman is not None:
            self.capman.resume_global_capture()


@pytest.fixture(autouse=True)
def _expose_capture(request):
    _uncaptured.capman = request.config.pluginmanager.getplugin("capturemanager")
    yield
    _uncaptured.capman = None


def _boxes(d):
    return " ".join("(" + ",".join(map(str, b)) + ")" for b in d.sorted_boxes())


# ------------------------------------------------------------ 1


def criterion_1():
    bad = []
    tc, tnc = set(), set()
    for n in range(1, 11):
        for p in iter_partitions(n):
            form = classify_by_form(from_partition(p)).kind
            table = classify_by_table(from_partition(p)).kind
            if form is not table or partition_type(p) is not table:
                bad.append(f"{p}: form={form.value} table={table.value}")
            if n <= 8 and (form is RepType.FINITE) != (p not in FINITE_EXCEPTIONS):
                bad.append(f"{p}: n<=8 census broken ({form.value})")
            if form is RepType.TAME_CONCEALED:
                tc.add(p)
            if form is RepType.TAME_NON_CONCEALED:
                tnc.add(p)
    if tc != TC_LIST:
        bad.append(f"tame concealed set differs: {sorted(tc ^ TC_LIST)}")
    if tnc != TNC_LIST:
        bad.append(f"tame non-concealed set differs: {sorted(tnc ^ TNC_LIST)}")
    return report(1, not bad, f"partitions <= 10 boxes, {len(tc)} TC / {len(tnc)} TNC, "
                              f"{len(bad)} problems", bad)


# ------------------------------------------------------------ 2


def _nullroot_problems(label, d):
    f = tits_form(d)
    res = minimal_nullroots(f)
    if len(res.minimal) != 1:
        return [f"{label}: {len(res.minimal)} minimal nullroots in the box"]
    z = res.minimal[0]
    out = []
    if evaluate(f, z) != 0:
        out.append(f"{label}: nullroot evaluates to {evaluate(f, z)}")
    if min(z) < 1:
        out.append(f"{label}: nullroot not sincere")
    return out


def criterion_2():
    pairs = [p for p in iter_double_partitions(12, max_ground=7)]
    diagrams = [p.to_diagram() for p in pairs]
    comps = run_comparisons(diagrams, jobs=JOBS)
    bad = [f"{p}: form={c.form.kind.value} table={c.table.kind.value}"
           for p, c in zip(pairs, comps) if not c.agrees]
    classes = {min((p.lam, p.mu), (p.mu, p.lam)) for p, c in zip(pairs, comps) if not c.agrees}
    null = []
    for s in _FLAT_TC + _FLAT_TC_EXTRA:
        null += _nullroot_problems(s, parse_double_partition(s).to_diagram())
    return report(2, not bad and not null,
                  f"{len(pairs)} flat double partitions, {len(bad)} disagreements "
                  f"({len(classes)} up to swapping the walls), "
                  f"{len(null)} nullroot problems", bad + null)


# ------------------------------------------------------------ 3


def criterion_3():
    f = tits_form(corner7())
    center0 = tuple(0 if lab == (1, 1, 1) else 1 for lab in f.labels)
    wp = is_weakly_positive(f)
    ext = from_boxes(3, list(corner7().boxes) + [(1, 3, 1)])
    g = tits_form(ext)
    extended = [0 if lab == (1, 1, 1) else 1 if lab == (1, 3, 1) else 2 for lab in g.labels]
    checks = {
        "sos identity": sos_identity_check("A3"),
        "not weakly positive, centre-0 nullroot": (not wp) and wp.witness == center0
                                                  and evaluate(f, center0) == 0,
        "not critical": not is_critical(f),
        "tame non-concealed": classify_by_form(corner7()).kind is RepType.TAME_NON_CONCEALED,
        "extended vector gives -1": evaluate(g, extended) == -1,
    }
    bad = [k for k, v in checks.items() if not v]
    return report(3, not bad, "; ".join(f"{k}: {'ok' if v else 'no'}" for k, v in checks.items()))


# ------------------------------------------------------------ 4


def criterion_4():
    parts, details = {}, []
    s4 = star(4)
    v = classify_by_form(s4)
    f = tits_form(s4)
    want = tuple(2 if lab == (1,) * 4 else 1 for lab in f.labels)
    res = minimal_nullroots(f)
    parts["star k=4 TC (1,1,1,1;2)"] = (v.kind is RepType.TAME_CONCEALED and res.minimal == (want,)
                                        and evaluate(f, want) == 0)
    details += _nullroot_problems("star k=4", s4)
    parts["A(4) sos + TNC"] = (sos_identity_check("A4")
                               and classify_by_form(q4_diagram()).kind is RepType.TAME_NON_CONCEALED)
    images = _q4_images()
    outside = [d for n in range(1, 10) for d in enumerate_diagrams(4, n, up_to_symmetry=True)
               if effective_dimension(d) == 4 and not any(contains(q, d) for q in images)]
    not_wild = [d for d in outside if classify_by_form(d).kind is not RepType.WILD]
    parts[f"outside Q(4) => Wild ({len(outside) - len(not_wild)}/{len(outside)})"] = not not_wild
    details += [f"{_boxes(d)}: {classify_by_form(d).kind.value}" for d in not_wild]
    s5 = classify_by_form(star(5))
    parts["star k=5 Wild, -1"] = s5.kind is RepType.WILD and s5.certificate["value"] == -1
    ok = all(parts.values()) and not details
    return report(4, ok, "; ".join(f"{k}: {'ok' if v else 'no'}" for k, v in parts.items()), details)


# ------------------------------------------------------------ 5


def criterion_5():
    f2, f3 = FiniteFieldConfig(2), FiniteFieldConfig(3)
    cases = bad = 0
    details = []
    for k in range(1, 5):
        for n in range(1, 6):
            for d in enumerate_diagrams(k, n, up_to_symmetry=True):
                if effective_dimension(d) != k or classify_by_form(d).kind is not RepType.FINITE:
                    continue
                for dv in itertools.product(range(3), repeat=n):
                    if not 0 < sum(dv) <= 6:
                        continue
                    cases += 1
                    ks = krull_schmidt_count(d, dv)
                    a, b = count_iso_classes(d, dv, f2), count_iso_classes(d, dv, f3)
                    if not ks == a == b:
                        bad += 1
                        details.append(f"{_boxes(d)} dv={dv}: KS={ks} F2={a} F3={b}")
    return report(5, not bad, f"{cases} finite-shape cases, {bad} mismatches", details)


# ------------------------------------------------------------ 6


def criterion_6():
    import test_classify
    import test_diagram
    import test_tables
    import test_tits

    suites = {
        "order-ideal closure": test_diagram.test_order_ideal_closure,
        "q(e_i) = 1": test_tits.test_unit_vectors_have_value_one,
        "correlation invariance": test_classify.test_verdicts_are_correlation_invariant,
        "containment monotonicity": test_classify.test_verdict_rank_is_monotone,
        "k=2 transpose closure": test_tables.test_partition_table_is_transpose_closed,
        "certificate re-verification": test_classify.test_certificates_reverify,
    }
    failed = []
    for name, prop in suites.items():
        try:
            prop()
        except Exception as exc:   # report every suite, not just the first failure
            failed.append(f"{name}: {type(exc).__name__}: {str(exc).splitlines()[0][:200]}")
    return report(6, not failed, f"{len(suites)} property suites x 1000 cases, "
                                 f"{len(failed)} failing", failed)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6]


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: c.__name__)
def test_acceptance(criterion):
    assert criterion()


if __name__ == "__main__":
    sys.path.insert(0, os.path.dirname(__file__))
    results = []
    for c in CRITERIA:
        start = time.perf_counter()
        results.append(c())
        print(f"    ({time.perf_counter() - start:.1f}s)")
    sys.exit(0 if all(results) else 1)
