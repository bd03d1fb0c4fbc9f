"""Shared helpers for the test suite: random values and matrices."""

from fractions import Fraction

from ybtk.scalars import Field
from ybtk.tensors import Mat, Tensor4


def rand_fraction(rng, lo=-5, hi=5):
    return Fraction(rng.randint(lo, hi), rng.randint(1, 4))


def rand_scalar(rng, field: Field):
    if field.exact:
        value = field.from_fraction(rand_fraction(rng))
        for name in field.tag.indeterminates:
            if rng.random() < 0.4:
                value = value + field.from_fraction(rand_fraction(rng)) * field.sym(
                    name
                ) ** rng.randint(-2, 2)
        return value
    return complex(rng.uniform(-2, 2), rng.uniform(-2, 2))


def rand_mat(rng, field: Field, rows, cols, density=1.0):
    def fn(i, j):
        if rng.random() > density:
            return field.zero
        return rand_scalar(rng, field)

    return Mat.build(field, rows, cols, fn)


def rand_invertible(rng, field: Field, n, tries=50):
    for _ in range(tries):
        m = rand_mat(rng, field, n, n)
        try:
            m.inverse()
        except Exception:
            continue
        return m
    raise RuntimeError("no invertible matrix found")


def rand_tensor4(rng, field: Field, n, density=1.0):
    return Tensor4(n, rand_mat(rng, field, n * n, n * n, density))
