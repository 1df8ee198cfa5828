#!/usr/bin/env python3
# Copyright (c) 2026, the plabel authors. All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates include/plabel/unicode_data.hpp from CPython's unicodedata.

Emits:
  - fully expanded canonical (NFD) decompositions, Hangul excluded
  - nonzero canonical combining classes
  - primary composite pairs (composition exclusions already filtered out
    by deriving pairs through unicodedata.normalize)
  - general-category P* ranges, Mn/Me ("extend") and Mc ranges
  - the White_Space set

Also writes tests/data/nfc_vectors.tsv, a frozen oracle of NFC
normalizations computed by CPython for the C++ implementation to match.

Usage: python3 scripts/gen_unicode_tables.py [repo_root]
"""

import os
import random
import sys
import unicodedata

HANGUL_FIRST = 0xAC00
HANGUL_LAST = 0xD7A3
MAX_CP = 0x110000


def is_surrogate(cp):
    return 0xD800 <= cp <= 0xDFFF


def gen_decompositions():
    entries = []  # (cp, [expansion...])
    for cp in range(MAX_CP):
        if is_surrogate(cp) or HANGUL_FIRST <= cp <= HANGUL_LAST:
            continue
        ch = chr(cp)
        nfd = unicodedata.normalize("NFD", ch)
        if nfd != ch:
            entries.append((cp, [ord(c) for c in nfd]))
    return entries


def gen_ccc():
    entries = []
    for cp in range(MAX_CP):
        if is_surrogate(cp):
            continue
        c = unicodedata.combining(chr(cp))
        if c != 0:
            entries.append((cp, c))
    return entries


def gen_composition_pairs():
    pairs = []
    for cp in range(MAX_CP):
        if is_surrogate(cp) or HANGUL_FIRST <= cp <= HANGUL_LAST:
            continue
        d = unicodedata.decomposition(chr(cp))
        if not d or d.startswith("<"):
            continue
        parts = d.split()
        if len(parts) != 2:
            continue
        a, b = int(parts[0], 16), int(parts[1], 16)
        if unicodedata.normalize("NFC", chr(a) + chr(b)) == chr(cp):
            pairs.append((a, b, cp))
    pairs.sort(key=lambda t: (t[0] << 21) | t[1])
    return pairs


def category_ranges(pred):
    ranges = []
    lo = None
    for cp in range(MAX_CP):
        hit = (not is_surrogate(cp)) and pred(unicodedata.category(chr(cp)))
        if hit and lo is None:
            lo = cp
        elif not hit and lo is not None:
            ranges.append((lo, cp - 1))
            lo = None
    if lo is not None:
        ranges.append((lo, MAX_CP - 1))
    return ranges


def whitespace_set():
    cps = [cp for cp in range(0x4000)
           if not is_surrogate(cp) and chr(cp).isspace()]
    return cps


def fmt_u32_list(values, per_line=8):
    lines = []
    for i in range(0, len(values), per_line):
        lines.append("    " + ", ".join("0x%X" % v for v in values[i:i + per_line]) + ",")
    return "\n".join(lines)


def emit_header(out_path):
    decomps = gen_decompositions()
    ccc = gen_ccc()
    pairs = gen_composition_pairs()
    punct = category_ranges(lambda c: c.startswith("P"))
    extend = category_ranges(lambda c: c in ("Mn", "Me"))
    spacing = category_ranges(lambda c: c == "Mc")
    ws = whitespace_set()

    pool = []
    decomp_rows = []
    for cp, expansion in decomps:
        decomp_rows.append((cp, len(pool), len(expansion)))
        pool.extend(expansion)

    with open(out_path, "w", encoding="utf-8") as f:
        w = f.write
        w("// Copyright (c) 2026, the plabel authors. All rights reserved.\n")
        w("//\n")
        w('// Licensed under the Apache License, Version 2.0 (the "License");\n')
        w("// you may not use this file except in compliance with the License.\n")
        w("// You may obtain a copy of the License at\n")
        w("//\n")
        w("//     http://www.apache.org/licenses/LICENSE-2.0\n")
        w("//\n")
        w("// Unless required by applicable law or agreed to in writing, software\n")
        w('// distributed under the License is distributed on an "AS IS" BASIS,\n')
        w("// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.\n")
        w("// See the License for the specific language governing permissions and\n")
        w("// limitations under the License.\n")
        w("//\n")
        w("// Generated by scripts/gen_unicode_tables.py -- do not edit by hand.\n")
        w("// Source: CPython %s unicodedata (Unicode %s).\n"
          % (sys.version.split()[0], unicodedata.unidata_version))
        w("\n#pragma once\n\n#include <cstdint>\n\n")
        w("namespace plabel::unicode_data {\n\n")

        w("struct DecompEntry {\n  std::uint32_t cp;\n  std::uint32_t offset;\n  std::uint32_t len;\n};\n\n")
        w("struct CccEntry {\n  std::uint32_t cp;\n  std::uint8_t ccc;\n};\n\n")
        w("struct CompEntry {\n  std::uint64_t key;  // (first << 21) | second\n  std::uint32_t composed;\n};\n\n")
        w("struct Range {\n  std::uint32_t lo;\n  std::uint32_t hi;\n};\n\n")

        w("inline constexpr DecompEntry kDecompositions[] = {\n")
        for cp, off, n in decomp_rows:
            w("    {0x%X, %d, %d},\n" % (cp, off, n))
        w("};\n\n")

        w("inline constexpr std::uint32_t kDecompositionPool[] = {\n")
        w(fmt_u32_list(pool))
        w("\n};\n\n")

        w("inline constexpr CccEntry kCombiningClasses[] = {\n")
        for cp, c in ccc:
            w("    {0x%X, %d},\n" % (cp, c))
        w("};\n\n")

        w("inline constexpr CompEntry kCompositionPairs[] = {\n")
        for a, b, c in pairs:
            w("    {0x%X, 0x%X},\n" % ((a << 21) | b, c))
        w("};\n\n")

        for name, ranges in (("kPunctuationRanges", punct),
                             ("kExtendRanges", extend),
                             ("kSpacingMarkRanges", spacing)):
            w("inline constexpr Range %s[] = {\n" % name)
            for lo, hi in ranges:
                w("    {0x%X, 0x%X},\n" % (lo, hi))
            w("};\n\n")

        w("inline constexpr std::uint32_t kWhitespace[] = {\n")
        w(fmt_u32_list(ws))
        w("\n};\n\n")
        w("}  // namespace plabel::unicode_data\n")

    return len(decomp_rows), len(ccc), len(pairs), len(punct)


def emit_nfc_vectors(out_path):
    rng = random.Random(20260810)
    cases = []

    bengali_interesting = [
        # composed / decomposed o-kar and au-kar
        "কো", "কো", "কৌ", "কৌ",
        # nukta letters: NFC keeps these decomposed (composition exclusions)
        "ড়", "ড়", "ঢ়", "ঢ়", "য়", "য়",
        # conjunct with virama, chandrabindu
        "ক্ত", "পাঁচ",
        # combining mark reordering (nukta ccc=7 after virama ccc=9)
        "ক়্", "ক়্",
    ]
    latin_interesting = [
        "é", "é", "ä́", "ǟ",
        "Å", "Å", "Å",
        "q̣̇", "q̣̇",
    ]
    other = ["가", "가", "각", "각",
             "ἄ", "ἄ"]
    cases.extend(bengali_interesting + latin_interesting + other)

    pools = [
        list(range(0x0980, 0x09FF)),   # Bengali
        list(range(0x0041, 0x007B)),   # Latin
        list(range(0x0300, 0x0340)),   # combining diacriticals
        list(range(0x0900, 0x0980)),   # Devanagari
        [0x09BC, 0x09CD, 0x0981, 0x09BE, 0x09C7, 0x09D7, 0x200C, 0x200D],
    ]
    for _ in range(400):
        n = rng.randint(1, 12)
        s = []
        for _ in range(n):
            pool = rng.choice(pools)
            cp = rng.choice(pool)
            if is_surrogate(cp) or not chr(cp).isprintable():
                cp = 0x0995
            s.append(chr(cp))
        cases.append("".join(s))

    with open(out_path, "w", encoding="utf-8") as f:
        f.write("# input codepoints (hex)\tNFC codepoints (hex); generated by gen_unicode_tables.py\n")
        for s in cases:
            nfc = unicodedata.normalize("NFC", s)
            f.write(" ".join("%04X" % ord(c) for c in s))
            f.write("\t")
            f.write(" ".join("%04X" % ord(c) for c in nfc))
            f.write("\n")
    return len(cases)


def main():
    root = sys.argv[1] if len(sys.argv) > 1 else os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    header = os.path.join(root, "include", "plabel", "unicode_data.hpp")
    vectors = os.path.join(root, "tests", "data", "nfc_vectors.tsv")
    os.makedirs(os.path.dirname(header), exist_ok=True)
    os.makedirs(os.path.dirname(vectors), exist_ok=True)
    nd, nc, np_, npr = emit_header(header)
    nv = emit_nfc_vectors(vectors)
    print("decompositions=%d ccc=%d pairs=%d punct_ranges=%d nfc_vectors=%d"
          % (nd, nc, np_, npr, nv))


if __name__ == "__main__":
    main()
