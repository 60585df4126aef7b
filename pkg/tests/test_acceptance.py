"""Acceptance criteria, one test each.

Every test prints a single PASS/FAIL line with its runtime against the
limit, then fails if either the check or the time budget failed.
"""

import random
import time
from contextlib import contextmanager

import test_applications
import test_multiplicity as tm
import test_polyalg as tp
import test_weights as tw
from conftest import SEED, load_fan, random_system
from torloc.applications import chern_number, mixed_volume, resolve_klyachko
from torloc.localization import e_sigma, iota_star, iota_star_image, is_balanced, picard_rank, ranks_table
from torloc.polyalg import Polynomial, RationalFunction
from torloc.serialize import bundle_from_json, fixture_path, read_document, system_from_json


@contextmanager
def criterion(capsys, number, title, limit):
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        if status == "PASS" and limit is not None and elapsed >= limit:
            status = "FAIL"
        budget = "no time limit" if limit is None else f"limit {limit} s"
        with capsys.disabled():
            print(f"\ncriterion {number} [{title}]: {status} in {elapsed:.2f} s ({budget}, exact)")
    assert limit is None or elapsed < limit, f"criterion {number} took {elapsed:.2f} s"


def rf(num, forms, n):
    return RationalFunction.from_forms(num if isinstance(num, Polynomial) else Polynomial.constant(n, num), forms)


def test_criterion_1_modz2(capsys):
    with criterion(capsys, 1, "mod Z2 multiplicities, weight and image", 1):
        fan = load_fan("modz2")
        two = rf(2, [(1, -1), (1, 1)], 2)
        for key, sign in zip(fan.maximal, (1, -1, 1, -1)):
            assert e_sigma(fan.cone(key)).equals_by_evaluation(two * sign, points=5, seed=SEED)
        c = iota_star(fan, tw.modz2_f(fan))
        assert c.vector() == [2] and is_balanced(c)[0]
        assert iota_star_image(fan, 2).index == 2


RANKS = {
    "cube": ((1, 4, 11, 23), (0, 3, 9, 22), (1, 1, 5, 1)),
    "fulton": ((1, 3, 8, 20), (0, 3, 6, 16), (1, 0, 5, 1)),
    "final_threefold": ((1, 4, 10, 22), (0, 3, 9, 19), (1, 1, 5, 1)),
}


def test_criterion_2_rank_tables(capsys):
    with criterion(capsys, 2, "rank tables of three threefolds", 60):
        for name, columns in RANKS.items():
            rows = ranks_table(load_fan(name), 3)
            assert tuple(zip(*rows)) == columns, name


def test_criterion_3_bott_residue(capsys):
    with criterion(capsys, 3, "Bott residue on the cube fan", 5):
        fan = load_fan("cube")
        a = Polynomial.variable(3, 0)
        e1 = rf(a * 4, [(1, -1, 0), (1, 1, 0), (1, 0, -1), (1, 0, 1)], 3)
        assert e_sigma(fan.cone(fan.maximal[0])) == e1
        assert e_sigma(fan.cone(fan.maximal[5])) == -e1
        bundle = bundle_from_json(read_document(fixture_path("cube_bundle")), fan)
        for m, expected in enumerate(test_applications.CUBE_BUNDLE_U):
            assert set(resolve_klyachko(bundle, m)) == expected
        assert chern_number(bundle, (1, 1, 1)) == 64
        assert chern_number(bundle, (2, 1)) == 32


def test_criterion_4_mixed_volumes(capsys):
    with criterion(capsys, 4, "mixed volume three-way agreement", 120):
        count = 0
        for name in ("segments", "squares", "simplices"):
            assert mixed_volume(system_from_json(read_document(fixture_path(name))), "all").agree
            count += 1
        rng = random.Random(SEED + 40)
        for i in range(50):
            system = random_system(rng, (2, 3)[i % 2], bound=3)
            report = mixed_volume(system, "all")
            assert report.agree, report.methods
            count += 1
        assert count == 53


PROPERTIES = [
    ("vanishing sum", tm.test_vanishing_sum, True),
    ("restricted vanishing", tm.test_restricted_vanishing, True),
    ("divisor relation", tm.test_divisor_relation, False),
    ("ray sum", tm.test_ray_sum, False),
    ("two resolution strategies", tm.test_strategies_and_principal_part_agree, False),
    ("principal degrees", tp.test_principal_degree_dichotomy, False),
    ("Hilbert series by enumeration", tm.test_hilbert_series_against_enumeration, False),
    ("balancing", tw.test_random_outputs_are_balanced, True),
    ("additivity", tw.test_additivity, True),
    ("section independence", tw.test_section_independence, True),
]


def test_criterion_5_property_suite(capsys, fans):
    with criterion(capsys, 5, "property suite, 20+ seeded instances each", None):
        failed = []
        for name, check, needs_fans in PROPERTIES:
            try:
                check(fans) if needs_fans else check()
            except AssertionError:
                failed.append(name)
        assert not failed, failed


def test_criterion_6_picard(capsys):
    with criterion(capsys, 6, "Picard ranks", None):
        assert picard_rank(load_fan("fulton")) == 0
        assert picard_rank(load_fan("cube")) == 1
        assert picard_rank(load_fan("final_threefold")) == 1
