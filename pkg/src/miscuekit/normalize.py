"""Text and phoneme normalization.

Word-level: whitespace tokenization after hyphen splitting, lowercasing,
punctuation stripping (word-internal and word-initial apostrophes
survive), digit-to-Dutch-word conversion, and removal of annotation cue
tokens such as "ggg" or "*markers*".

Phoneme-level: symbol-by-symbol mapping between phoneme alphabets (IPA
source symbols to the CGN set used by Dutch corpus annotations), driven
by an editable tab-separated table.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from importlib import resources

from .dutch_numbers import int_to_dutch
from .exceptions import MalformedLine, UnknownSymbol

log = logging.getLogger(__name__)

# Asterisk deliberately absent: Jasmin-style cue markers ("*v", "*a") must
# survive normalization so strip_cues can recognize them.
DEFAULT_PUNCTUATION = frozenset(
    ".,!?;:\"()[]{}<>/\\|@#$%^&_+=~`"
    "…«»„“”‘"
)

DEFAULT_CUE_MARKERS = frozenset({"ggg", "xxx", "mmm"})

# Hyphen-like characters split compounds into two tokens before tokenization.
_HYPHENS = "-‐‑‒–—"

# CGN broad phonetic alphabet: the symbol inventory Jasmin annotations use.
CGN_SYMBOLS = frozenset(
    {
        # plosives and fricatives
        "p", "b", "t", "d", "k", "g", "f", "v", "s", "z", "S", "Z", "x", "G", "h",
        # sonorants
        "N", "m", "n", "J", "l", "r", "w", "j",
        # short vowels and schwa
        "I", "E", "A", "O", "Y", "@",
        # tense vowels
        "i", "y", "u", "a", "e", "2", "o",
        # diphthongs
        "E+", "Y+", "A+",
        # long and nasalized loan vowels
        "E:", "Y:", "O:", "E~", "A~", "O~", "Y~",
    }
)

IPA = "IPA"
CGN = "CGN"


@dataclass(frozen=True, slots=True)
class Token:
    """One word: original span, normalized form, position in its sequence."""

    surface: str
    norm: str
    index: int


@dataclass(frozen=True, slots=True)
class WordSeq:
    """An ordered word sequence with consecutive token indices."""

    tokens: tuple[Token, ...]

    def __post_init__(self):
        for expected, token in enumerate(self.tokens):
            if token.index != expected:
                raise ValueError(
                    f"token indices must be consecutive from 0, got {token.index} at {expected}"
                )

    @property
    def norms(self) -> list[str]:
        return [t.norm for t in self.tokens]

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def __getitem__(self, i: int) -> Token:
        return self.tokens[i]

    @classmethod
    def from_norms(cls, norms: list[str]) -> "WordSeq":
        return cls(tuple(Token(surface=n, norm=n, index=i) for i, n in enumerate(norms)))

    def text(self) -> str:
        return " ".join(self.norms)


@dataclass(frozen=True, slots=True)
class PhonemeSeq:
    """An ordered phoneme symbol sequence tagged with its alphabet."""

    symbols: tuple[str, ...]
    alphabet: str

    def __post_init__(self):
        if self.alphabet == CGN:
            for pos, sym in enumerate(self.symbols):
                if sym not in CGN_SYMBOLS:
                    raise ValueError(f"symbol {sym!r} at position {pos} is not in the CGN inventory")
        else:
            # IPA is treated as an open inventory; only emptiness is rejected.
            for pos, sym in enumerate(self.symbols):
                if not sym:
                    raise ValueError(f"empty symbol at position {pos}")

    def __len__(self) -> int:
        return len(self.symbols)


@dataclass(frozen=True)
class PhonemeMapping:
    """Source-symbol to target-symbol-list table between two alphabets."""

    entries: dict[str, tuple[str, ...]]
    source_alphabet: str
    target_alphabet: str

    def __post_init__(self):
        for src, targets in self.entries.items():
            if not targets:
                raise ValueError(f"mapping entry {src!r} has an empty target list")


@dataclass(frozen=True)
class NormalizationConfig:
    """Switches for word and phoneme normalization."""

    punctuation: frozenset[str] = DEFAULT_PUNCTUATION
    cue_markers: frozenset[str] = DEFAULT_CUE_MARKERS
    cue_prefixes: tuple[str, ...] = ("*",)
    convert_numerals: bool = True
    keep_apostrophes: bool = True

    def is_cue(self, norm: str) -> bool:
        return norm in self.cue_markers or any(
            norm.startswith(p) for p in self.cue_prefixes
        )


def _strip_punctuation(token: str, cfg: NormalizationConfig) -> str:
    token = token.replace("’", "'")
    kept = []
    for i, ch in enumerate(token):
        if ch == "'":
            # word-initial and word-internal apostrophes are orthographic
            # in Dutch ("'s", "z'n"); trailing ones are punctuation
            if cfg.keep_apostrophes and i + 1 < len(token) and token[i + 1] not in cfg.punctuation:
                kept.append(ch)
            continue
        if ch in cfg.punctuation:
            continue
        kept.append(ch)
    return "".join(kept)


def normalize_tokens(raw: str, cfg: NormalizationConfig | None = None) -> WordSeq:
    """Tokenize and normalize raw text into a WordSeq.

    Lowercases, splits hyphenated compounds, strips punctuation, converts
    standalone digit strings 0..9999 to Dutch number words, and drops
    tokens that normalize to nothing.
    """
    cfg = cfg or NormalizationConfig()
    lowered = raw.lower()
    for hyphen in _HYPHENS:
        lowered = lowered.replace(hyphen, " ")
    norms: list[tuple[str, str]] = []  # (surface, norm)
    for piece in lowered.split():
        norm = _strip_punctuation(piece, cfg)
        if not norm:
            continue
        if norm.isdecimal() and cfg.convert_numerals:
            value = int(norm)
            if value <= 9999:
                norms.extend((piece, word) for word in int_to_dutch(value))
                continue
            log.warning("numeral %s exceeds 9999; passed through unchanged", norm)
        norms.append((piece, norm))
    return WordSeq(
        tuple(Token(surface=s, norm=n, index=i) for i, (s, n) in enumerate(norms))
    )


def strip_cues(words: WordSeq, cfg: NormalizationConfig | None = None) -> WordSeq:
    """Remove non-verbal cue tokens and re-index the remainder."""
    cfg = cfg or NormalizationConfig()
    kept = [t for t in words if not cfg.is_cue(t.norm)]
    return WordSeq(
        tuple(Token(surface=t.surface, norm=t.norm, index=i) for i, t in enumerate(kept))
    )


def map_phonemes(seq: PhonemeSeq, mapping: PhonemeMapping) -> PhonemeSeq:
    """Rewrite a phoneme sequence into the mapping's target alphabet.

    Each symbol is replaced by its target list in order; a symbol without
    an entry raises UnknownSymbol.
    """
    if seq.alphabet != mapping.source_alphabet:
        raise ValueError(
            f"sequence alphabet {seq.alphabet} does not match mapping source "
            f"{mapping.source_alphabet}"
        )
    out: list[str] = []
    for pos, sym in enumerate(seq.symbols):
        targets = mapping.entries.get(sym)
        if targets is None:
            raise UnknownSymbol(sym, pos)
        out.extend(targets)
    return PhonemeSeq(symbols=tuple(out), alphabet=mapping.target_alphabet)


def parse_phoneme_symbols(
    text: str, alphabet: str, cfg: NormalizationConfig | None = None
) -> PhonemeSeq:
    """Split a whitespace-separated phoneme string, dropping cue symbols."""
    cfg = cfg or NormalizationConfig()
    symbols = tuple(s for s in text.split() if not cfg.is_cue(s))
    return PhonemeSeq(symbols=symbols, alphabet=alphabet)


def load_phoneme_mapping(path, source_alphabet: str = IPA, target_alphabet: str = CGN) -> PhonemeMapping:
    """Load a tab-separated mapping file.

    One entry per line: source symbol, a tab, then one or more
    space-separated target symbols.  '#' lines are comments.
    """
    entries: dict[str, tuple[str, ...]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise MalformedLine("expected '<source>\\t<targets>'", lineno)
            source, target_text = parts[0], parts[1]
            targets = tuple(target_text.split())
            if not source or not targets:
                raise MalformedLine("empty source or target list", lineno)
            if source in entries:
                raise MalformedLine(f"duplicate source symbol {source!r}", lineno)
            entries[source] = targets
    return PhonemeMapping(
        entries=entries, source_alphabet=source_alphabet, target_alphabet=target_alphabet
    )


def bundled_ipa_cgn_mapping() -> PhonemeMapping:
    """The IPA-to-CGN table shipped with the package."""
    ref = resources.files("miscuekit.data").joinpath("ipa_cgn.tsv")
    with resources.as_file(ref) as path:
        return load_phoneme_mapping(path)
