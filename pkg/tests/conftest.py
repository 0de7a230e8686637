"""Shared fixture spaces used across the test modules.

The fixtures cover every construction route: full zip shifts with and
without letter collisions, a 1-step finite-type space, a wider 5-letter
finite-type space, a sofic space given by a presentation, and the coding
spaces of the fold models.
"""

from __future__ import annotations

from fractions import Fraction

import pytest

from zipshift import (
    Alphabet,
    TransitionMap,
    build_model,
    coding_space,
    full_space,
    sft_space,
    sofic_space,
)


@pytest.fixture(scope="session")
def ex21():
    return sft_space(
        Alphabet(["a", "b"]),
        Alphabet(["1", "2", "3"]),
        TransitionMap(1, {("1",): "a", ("2",): "b", ("3",): "b"}),
        {("1", "1"), ("1", "3"), ("2", "1"), ("3", "3")},
    )


@pytest.fixture(scope="session")
def f3():
    return full_space(
        Alphabet(["a", "b"]),
        Alphabet(["1", "2", "3"]),
        TransitionMap(1, {("1",): "a", ("2",): "b", ("3",): "b"}),
    )


@pytest.fixture(scope="session")
def classical():
    return full_space(
        Alphabet(["0", "1"]),
        Alphabet(["0", "1"]),
        TransitionMap(1, {("0",): "0", ("1",): "1"}),
    )


@pytest.fixture(scope="session")
def sigma_f():
    return full_space(
        Alphabet(["a", "b"]),
        Alphabet(["1", "2", "3", "4"]),
        TransitionMap(1, {("1",): "a", ("2",): "b", ("3",): "a", ("4",): "b"}),
    )


@pytest.fixture(scope="session")
def sigma_g():
    return full_space(
        Alphabet(["a"]),
        Alphabet(["1", "2", "3", "4"]),
        TransitionMap(1, {("1",): "a", ("2",): "a", ("3",): "a", ("4",): "a"}),
    )


@pytest.fixture(scope="session")
def even():
    return sofic_space(
        Alphabet(["a", "b", "c"]),
        Alphabet(["0", "1"]),
        TransitionMap(
            2,
            {
                ("1", "1"): "a",
                ("1", "0"): "b",
                ("0", "1"): "b",
                ("0", "0"): "c",
            },
        ),
        ["P", "Q"],
        [("P", "P", "1"), ("P", "Q", "0"), ("Q", "P", "0")],
    )


@pytest.fixture(scope="session")
def five():
    return sft_space(
        Alphabet(["a", "b", "c"]),
        Alphabet(["1", "2", "3", "4", "5"]),
        TransitionMap(
            1, {("1",): "a", ("2",): "b", ("3",): "b", ("4",): "c", ("5",): "c"}
        ),
        {("1", "4"), ("2", "2"), ("3", "5"), ("5", "1"), ("4", "4")},
    )


@pytest.fixture(scope="session")
def model1():
    return build_model(1, Fraction(1))


@pytest.fixture(scope="session")
def model2():
    return build_model(2, Fraction(1, 2))


@pytest.fixture(scope="session")
def coding1(model1):
    return coding_space(model1)


@pytest.fixture(scope="session")
def coding2(model2):
    return coding_space(model2)
