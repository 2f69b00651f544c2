#!/usr/bin/env python3
"""Generate include/corelab/unicode_data.hpp.

Emits the fixed code-point tables the library ships with:
  - script ranges for the scripts the toolkit distinguishes
  - letter ranges (for the Other catch-all script class)
  - White_Space code points
  - simple lowercase mappings
  - canonical combining classes, canonical decompositions and primary
    composites for NFC normalization

Sources: Python's unicodedata (NFC/ccc/lowercase/categories) and the
'regex' package (Script= property ranges). Re-run only when deliberately
bumping the Unicode version; the generated header is checked in.
"""

import sys
import unicodedata

import regex

MAX_CP = 0x110000

SCRIPTS = [
    "Latin",
    "Greek",
    "Cyrillic",
    "Arabic",
    "Hebrew",
    "Devanagari",
    "Bengali",
    "Ethiopic",
    "Thai",
    "Myanmar",
    "Han",
    "Hiragana",
    "Katakana",
    "Hangul",
]


def ranges_from_predicate(pred):
    ranges = []
    start = None
    for cp in range(MAX_CP):
        if pred(cp):
            if start is None:
                start = cp
        else:
            if start is not None:
                ranges.append((start, cp))
                start = None
    if start is not None:
        ranges.append((start, MAX_CP))
    return ranges


def script_ranges(name):
    pat = regex.compile(r"\p{Script=%s}" % name)
    return ranges_from_predicate(lambda cp: pat.fullmatch(chr(cp)) is not None)


def letter_ranges():
    def is_letter(cp):
        return unicodedata.category(chr(cp)).startswith("L")

    return ranges_from_predicate(is_letter)


def whitespace_cps():
    pat = regex.compile(r"\p{White_Space}")
    return [cp for cp in range(0x4000) if pat.fullmatch(chr(cp))]


def lowercase_pairs():
    pairs = []
    for cp in range(MAX_CP):
        ch = chr(cp)
        low = ch.lower()
        if low != ch and len(low) == 1:
            pairs.append((cp, ord(low)))
    return pairs


def ccc_pairs():
    pairs = []
    for cp in range(MAX_CP):
        c = unicodedata.combining(chr(cp))
        if c:
            pairs.append((cp, c))
    return pairs


SBASE, LBASE, VBASE, TBASE = 0xAC00, 0x1100, 0x1161, 0x11A7
SCOUNT = 11172


def is_hangul_syllable(cp):
    return SBASE <= cp < SBASE + SCOUNT


def canonical_decompositions():
    """cp -> (first, second) or (first,). Hangul syllables excluded."""
    out = {}
    for cp in range(MAX_CP):
        if is_hangul_syllable(cp):
            continue
        d = unicodedata.decomposition(chr(cp))
        if not d or d.startswith("<"):
            continue
        parts = tuple(int(p, 16) for p in d.split())
        assert 1 <= len(parts) <= 2, hex(cp)
        out[cp] = parts
    return out


def primary_composites(decomps):
    """(starter, combiner) -> composite, composition exclusions filtered
    by checking against unicodedata's own NFC."""
    comp = {}
    for cp, parts in decomps.items():
        if len(parts) != 2:
            continue
        a, b = parts
        if unicodedata.normalize("NFC", chr(a) + chr(b)) == chr(cp):
            comp[(a, b)] = cp
    return comp


def fmt_rows(rows, per_line, fmt):
    lines = []
    for i in range(0, len(rows), per_line):
        lines.append("    " + " ".join(fmt(r) for r in rows[i : i + per_line]))
    return "\n".join(lines)


def main():
    decomps = canonical_decompositions()
    comps = sorted(primary_composites(decomps).items())
    ccc = ccc_pairs()
    lowers = lowercase_pairs()
    ws = whitespace_cps()

    out = []
    w = out.append
    w("// Generated by scripts/gen_unicode_data.py. Do not edit by hand.")
    w("// Unicode %s (unicodedata) / regex %s (script ranges)."
      % (unicodedata.unidata_version, regex.__version__))
    w("#pragma once")
    w("")
    w("#include <cstdint>")
    w("")
    w("namespace corelab::unicode_data {")
    w("")
    w('inline constexpr const char* kUnicodeVersion = "%s";'
      % unicodedata.unidata_version)
    w("")
    w("struct Range { char32_t lo; char32_t hi; };  // [lo, hi)")
    w("struct CpPair { char32_t cp; char32_t value; };")
    w("struct CpByte { char32_t cp; std::uint8_t value; };")
    w("struct Decomp { char32_t cp; char32_t first; char32_t second; };  // second==0: singleton")
    w("struct Composite { char32_t first; char32_t second; char32_t composed; };")
    w("")

    script_table = []
    for s in SCRIPTS:
        for lo, hi in script_ranges(s):
            script_table.append((lo, hi, s))
    script_table.sort()
    w("// Script ranges, sorted by code point; kScriptOfRange[i] names the script.")
    w("inline constexpr Range kScriptRanges[] = {")
    w(fmt_rows(script_table, 4, lambda r: "{0x%X, 0x%X}," % (r[0], r[1])))
    w("};")
    w("inline constexpr std::uint8_t kScriptRangeClass[] = {")
    w(fmt_rows(script_table, 12,
               lambda r: "%d," % (SCRIPTS.index(r[2]) + 2)))  # 0=Common 1=Other
    w("};")
    w("")

    letters = letter_ranges()
    w("inline constexpr Range kLetterRanges[] = {")
    w(fmt_rows(letters, 4, lambda r: "{0x%X, 0x%X}," % r))
    w("};")
    w("")

    w("inline constexpr char32_t kWhitespace[] = {")
    w(fmt_rows(ws, 12, lambda cp: "0x%X," % cp))
    w("};")
    w("")

    w("inline constexpr CpPair kSimpleLower[] = {")
    w(fmt_rows(lowers, 6, lambda p: "{0x%X, 0x%X}," % p))
    w("};")
    w("")

    w("inline constexpr CpByte kCombiningClass[] = {")
    w(fmt_rows(ccc, 6, lambda p: "{0x%X, %d}," % p))
    w("};")
    w("")

    rows = []
    for cp in sorted(decomps):
        parts = decomps[cp]
        first = parts[0]
        second = parts[1] if len(parts) == 2 else 0
        rows.append((cp, first, second))
    w("inline constexpr Decomp kCanonicalDecomp[] = {")
    w(fmt_rows(rows, 4, lambda r: "{0x%X, 0x%X, 0x%X}," % r))
    w("};")
    w("")

    w("// Primary composites (composition exclusions already removed).")
    w("inline constexpr Composite kComposites[] = {")
    w(fmt_rows([(a, b, c) for (a, b), c in comps], 4,
               lambda r: "{0x%X, 0x%X, 0x%X}," % r))
    w("};")
    w("")
    w("}  // namespace corelab::unicode_data")
    w("")

    sys.stdout.write("\n".join(out))


if __name__ == "__main__":
    main()
