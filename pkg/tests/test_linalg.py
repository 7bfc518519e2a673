import random
from fractions import Fraction

import pytest

from _oracles import naive_normal_form, naive_rref
from rees_ag.linalg import Echelon, kernel, rank
from rees_ag.polyring import Field

QQ = Field(0)


def random_rows(rng, nrows, ncols, p=0, density=0.6):
    rows = []
    for _ in range(nrows):
        row = {}
        for j in range(ncols):
            if rng.random() < density:
                v = rng.randint(-9, 9) if not p else rng.randrange(p)
                if v:
                    row[j] = v
        rows.append(row)
    # force some dependencies
    if nrows >= 3:
        a, b = rows[0], rows[1]
        dep = {}
        for k in set(a) | set(b):
            v = 2 * a.get(k, 0) - 3 * b.get(k, 0)
            if p:
                v %= p
            if v:
                dep[k] = v
        rows.append(dep)
    return rows


@pytest.mark.parametrize("seed", range(25))
def test_fraction_free_matches_naive_over_q(seed):
    rng = random.Random(seed)
    nrows, ncols = rng.randint(1, 7), rng.randint(1, 8)
    rows = random_rows(rng, nrows, ncols)
    E = Echelon(QQ)
    for r in rows:
        E.add(r)
    ref = naive_rref(rows, ncols)
    assert E.rank == len(ref)
    assert E.basis() == ref
    for _ in range(5):
        v = {j: Fraction(rng.randint(-20, 20), rng.randint(1, 6)) for j in range(ncols)}
        v = {k: c for k, c in v.items() if c}
        assert E.reduce(v) == naive_normal_form(v, ref)


@pytest.mark.parametrize("seed", range(15))
@pytest.mark.parametrize("p", [2, 3, 101])
def test_fp_matches_naive(seed, p):
    rng = random.Random(1000 + seed)
    nrows, ncols = rng.randint(1, 7), rng.randint(1, 8)
    rows = random_rows(rng, nrows, ncols, p)
    F = Field(p)
    E = Echelon(F)
    for r in rows:
        E.add(r)
    ref = naive_rref(rows, ncols, p)
    assert E.rank == len(ref)
    assert E.basis() == ref
    v = {j: rng.randrange(p) for j in range(ncols)}
    v = {k: c for k, c in v.items() if c}
    assert E.reduce(v) == naive_normal_form(v, ref, p)


def test_insertion_order_does_not_change_normal_form():
    rng = random.Random(7)
    rows = random_rows(rng, 6, 8)
    v = {j: rng.randint(-5, 5) for j in range(8)}
    results = set()
    for _ in range(6):
        rng.shuffle(rows)
        E = Echelon(QQ)
        for r in rows:
            E.add(r)
        results.add(tuple(sorted(E.reduce(v).items())))
    assert len(results) == 1


@pytest.mark.parametrize("seed", range(10))
def test_kernel_vectors_are_in_kernel(seed):
    rng = random.Random(seed)
    images = random_rows(rng, 6, 4)
    K = kernel(QQ, images)
    assert len(K) == len(images) - rank(QQ, images)
    for kv in K:
        total = {}
        for j, c in kv.items():
            for col, x in images[j].items():
                total[col] = total.get(col, 0) + c * x
        assert all(v == 0 for v in total.values())


def test_large_entries_stay_exact():
    big = 10 ** 30 + 7
    rows = [{0: big, 1: 1}, {0: 1, 1: big}]
    E = Echelon(QQ)
    for r in rows:
        E.add(r)
    assert E.rank == 2
    assert E.reduce({0: 1}) == {}
