from __future__ import annotations

import pytest

from miscuekit import int_to_dutch


@pytest.mark.parametrize(
    ("n", "words"),
    [
        (0, ["nul"]),
        (1, ["een"]),
        (7, ["zeven"]),
        (10, ["tien"]),
        (11, ["elf"]),
        (12, ["twaalf"]),
        (14, ["veertien"]),
        (18, ["achttien"]),
        (19, ["negentien"]),
        (20, ["twintig"]),
        (21, ["eenentwintig"]),
        (22, ["tweeëntwintig"]),
        (33, ["drieëndertig"]),
        (40, ["veertig"]),
        (45, ["vijfenveertig"]),
        (68, ["achtenzestig"]),
        (80, ["tachtig"]),
        (99, ["negenennegentig"]),
        (100, ["honderd"]),
        (101, ["honderdeen"]),
        (110, ["honderdtien"]),
        (111, ["honderdelf"]),
        (121, ["honderdeenentwintig"]),
        (200, ["tweehonderd"]),
        (222, ["tweehonderdtweeëntwintig"]),
        (999, ["negenhonderdnegenennegentig"]),
        (1000, ["duizend"]),
        (1001, ["duizend", "een"]),
        (1985, ["duizend", "negenhonderdvijfentachtig"]),
        (2000, ["tweeduizend"]),
        (2024, ["tweeduizend", "vierentwintig"]),
        (9999, ["negenduizend", "negenhonderdnegenennegentig"]),
    ],
)
def test_spells_known_numbers(n, words):
    assert int_to_dutch(n) == words


@pytest.mark.parametrize("n", [-1, 10000, 123456])
def test_rejects_out_of_range(n):
    with pytest.raises(ValueError):
        int_to_dutch(n)


def test_all_outputs_are_nonempty_lowercase_words():
    for n in range(0, 10000):
        words = int_to_dutch(n)
        assert 1 <= len(words) <= 2
        for w in words:
            assert w
            assert w == w.lower()
            assert " " not in w


def test_distinct_numbers_have_distinct_spellings():
    seen: dict[tuple[str, ...], int] = {}
    for n in range(0, 10000):
        key = tuple(int_to_dutch(n))
        assert key not in seen, f"{n} and {seen[key]} spell identically"
        seen[key] = n
