"""Integer-to-Dutch-words conversion for transcript normalization.

Covers 0..9999 in standard compound spelling: units and tens join with
"en" (with a diaeresis after a trailing e, e.g. tweeentwintig ->
tweeentwintig with trema), hundreds concatenate directly, and the part
after "duizend" is written as a separate word.
"""

from __future__ import annotations

_UNITS = [
    "nul", "een", "twee", "drie", "vier", "vijf", "zes", "zeven", "acht",
    "negen", "tien", "elf", "twaalf", "dertien", "veertien", "vijftien",
    "zestien", "zeventien", "achttien", "negentien",
]

_TENS = {
    20: "twintig",
    30: "dertig",
    40: "veertig",
    50: "vijftig",
    60: "zestig",
    70: "zeventig",
    80: "tachtig",
    90: "negentig",
}


def _under_hundred(n: int) -> str:
    if n < 20:
        return _UNITS[n]
    tens, unit = divmod(n, 10)
    word = _TENS[tens * 10]
    if unit == 0:
        return word
    unit_word = _UNITS[unit]
    # "twee"/"drie" take a diaeresis before "en": tweeëntwintig
    joiner = "ën" if unit_word.endswith("e") else "en"
    return unit_word + joiner + word


def _under_thousand(n: int) -> str:
    if n < 100:
        return _under_hundred(n)
    hundreds, rest = divmod(n, 100)
    word = "honderd" if hundreds == 1 else _UNITS[hundreds] + "honderd"
    if rest:
        word += _under_hundred(rest)
    return word


def int_to_dutch(n: int) -> list[str]:
    """Spell a non-negative integer <= 9999 as Dutch number words.

    Returns one token, or two when the number has a thousands part
    ("duizend" and the remainder are separate words).
    """
    if not 0 <= n <= 9999:
        raise ValueError(f"number out of supported range 0..9999: {n}")
    if n < 1000:
        return [_under_thousand(n)]
    thousands, rest = divmod(n, 1000)
    head = "duizend" if thousands == 1 else _UNITS[thousands] + "duizend"
    if rest == 0:
        return [head]
    return [head, _under_thousand(rest)]
