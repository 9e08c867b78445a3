#!/usr/bin/env python3
# Copyright 2026 The Synchro Authors.
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
"""Regenerates the bundled English-Japanese toy corpus.

Embeddings are hand-crafted rather than model output. Every source word i
owns the unit axis e_i (all of its subwords share it); a target subword that
should match source word i with cosine s is s*e_i plus a unit-norm remainder
on one of the noise axes, so every greedy cosine in the corpus is known by
construction. Unmatched target subwords point purely along a noise axis.

Outputs (all in this directory):
  segments.jsonl     word/POS/function flags/subword spans
  embeddings.jsonl   one source and one target matrix per segment
  external.pharaoh   stand-in for an external neural aligner
  gold.pharaoh       sure (i-j) and possible (i?j) reference links
  judgments.csv      synthetic MQM error scores
"""

import json
import math
import os

FUNCTION_POS = {"ADP", "AUX", "CCONJ", "SCONJ", "DET", "PART", "PRON", "PUNCT", "SYM"}
CONCEPT_DIMS = 56
NOISE_DIMS = 8
DIM = CONCEPT_DIMS + NOISE_DIMS

HERE = os.path.dirname(os.path.abspath(__file__))


def src(spec):
    """'surface/POS[/n_subwords]' tokens separated by spaces."""
    words = []
    for tok in spec.split():
        parts = tok.split("/")
        surface, pos = parts[0], parts[1]
        n = int(parts[2]) if len(parts) > 2 else 1
        words.append((surface, pos, n))
    return words


# Target words: (surface, pos, [per-subword list of (source word, cosine)]).
# An empty list marks a subword with no counterpart.
SEGMENTS = []


def segment(seg_id, source, target, external_drop=(), external_add=()):
    SEGMENTS.append(
        dict(id=seg_id, source=src(source), target=target,
             external_drop=set(external_drop), external_add=list(external_add)))


# "I ate apples yesterday." -> 私は / 昨日 / りんごを / 食べました
segment("s01", "I/PRON ate/VERB apples/NOUN/2 yesterday/NOUN/2", [
    ("私は", "PRON", [[(0, 0.93)], []]),
    ("昨日", "NOUN", [[(3, 0.88)]]),
    ("りんごを", "NOUN", [[(2, 0.90)], [(2, 0.74)]]),
    ("食べました", "VERB", [[(1, 0.86)], []]),
])

TABLE1_SOURCE = ("Out/ADP of/ADP seven/NUM large/ADJ public/ADJ corporations/NOUN/2 "
                 "commit/VERB frauds/NOUN/2 every/DET year/NOUN")

# Interpretation keeps "every year" in the middle.
segment("s02", TABLE1_SOURCE, [
    ("上場している", "VERB", [[(4, 0.81)], []]),
    ("企業の", "NOUN", [[(5, 0.90)], []]),
    ("7社に1社は", "NUM", [[(2, 0.92)], [(5, 0.45)], [], [(2, 0.60)], [], []]),
    ("毎年", "NOUN", [[(8, 0.77)], [(9, 0.89)]]),
    ("不正行為を", "NOUN", [[(7, 0.85)], [(7, 0.80)], []]),
    ("しています", "VERB", [[(6, 0.79)], []]),
], external_drop={(6, 5)}, external_add={(3, 1)})

# Offline translation moves "every year" to the front.
segment("s03", TABLE1_SOURCE, [
    ("毎年", "NOUN", [[(8, 0.77)], [(9, 0.89)]]),
    ("大企業の", "NOUN", [[(3, 0.80)], [(5, 0.90)], []]),
    ("7社に1社が", "NUM", [[(2, 0.92)], [], [], [(2, 0.60)], [], []]),
    ("不正行為を", "NOUN", [[(7, 0.85)], [(7, 0.80)], []]),
    ("働いています", "VERB", [[(6, 0.76)], []]),
])

SHORT_SOURCE = ("I/PRON learned/VERB new/ADJ characters/NOUN/2 every/DET day/NOUN "
                "during/ADP the/DET course/NOUN of/ADP the/DET next/ADJ 15/NUM years/NOUN")

segment("s04", SHORT_SOURCE, [
    ("それから", "ADV", [[(11, 0.62)]]),
    ("15", "NUM", [[(12, 0.95)]]),
    ("年", "NOUN", [[(13, 0.88)]]),
    ("毎年", "NOUN", [[(5, 0.76)]]),
    ("ずっと", "ADV", [[]]),
    ("新しい", "ADJ", [[(2, 0.90)]]),
    ("文字を", "NOUN", [[(3, 0.87)], []]),
    ("学んできました", "VERB", [[(1, 0.84)], []]),
    ("。", "PUNCT", [[]]),
])

segment("s05", SHORT_SOURCE, [
    ("その後", "ADV", [[(11, 0.58)]]),
    ("15", "NUM", [[(12, 0.95)]]),
    ("年間", "NOUN", [[(13, 0.83)]]),
    ("毎日", "NOUN", [[(4, 0.73)], [(5, 0.90)]]),
    ("新しい", "ADJ", [[(2, 0.91)]]),
    ("漢字を", "NOUN", [[(3, 0.79)], []]),
    ("習いました", "VERB", [[(1, 0.82)], []]),
    ("。", "PUNCT", [[]]),
], external_drop={(3, 5)})

LONG_SOURCE = (
    "Now/ADV mathematicians/NOUN/2 have/AUX been/AUX hiding/VERB and/CCONJ writing/VERB "
    "messages/NOUN in/ADP the/DET genetic/ADJ code/NOUN for/ADP a/DET long/ADJ time/NOUN "
    "but/CCONJ it/PRON 's/AUX clear/ADJ they/PRON were/AUX mathematicians/NOUN/2 and/CCONJ "
    "not/PART biologists/NOUN/2 because/SCONJ if/SCONJ you/PRON write/VERB long/ADJ "
    "messages/NOUN with/ADP the/DET code/NOUN that/PRON the/DET mathematicians/NOUN/2 "
    "developed/VERB it/PRON would/AUX more/ADJ than/ADP likely/ADV lead/VERB to/ADP "
    "new/ADJ proteins/NOUN/2 being/AUX synthesized/VERB/2")

# Interpretation: mostly source order, content condensed.
segment("s06", LONG_SOURCE, [
    ("数学者は", "NOUN", [[(1, 0.91)], [(1, 0.80)], []]),
    ("この様な", "DET", [[], []]),
    ("メッセージを", "NOUN", [[(7, 0.93)], []]),
    ("遺伝子", "NOUN", [[(10, 0.86)], [(10, 0.70)]]),
    ("コードで", "NOUN", [[(11, 0.90)], []]),
    ("作って", "VERB", [[(6, 0.78)]]),
    ("来たんです", "AUX", [[(2, 0.30)], []]),
    ("けども", "CCONJ", [[(16, 0.75)]]),
    ("しかし", "CCONJ", [[(16, 0.72)]]),
    ("数学者は", "NOUN", [[(22, 0.90), (1, 0.30)], [(22, 0.77)], []]),
    ("生物学者", "NOUN", [[(25, 0.92)], [(25, 0.80)]]),
    ("では", "ADP", [[]]),
    ("ありません", "VERB", [[(24, 0.50)]]),
    ("そして", "CCONJ", [[]]),
    ("間違ってる", "VERB", [[]]),
    ("物も", "NOUN", [[], []]),
    ("ある", "VERB", [[]]),
    ("訳です", "NOUN", [[], []]),
    ("新しい", "ADJ", [[(46, 0.88)]]),
    ("タンパク質を", "NOUN", [[(47, 0.94)], [(47, 0.80)], []]),
    ("合成して", "VERB", [[(49, 0.87)], []]),
    ("。", "PUNCT", [[]]),
], external_drop={(47, 19)}, external_add={(2, 6), (44, 20)})

# Offline translation: heavy reordering.
segment("s07", LONG_SOURCE, [
    ("長い", "ADJ", [[(14, 0.85)]]),
    ("間", "NOUN", [[(15, 0.74)]]),
    ("遺伝子", "NOUN", [[(10, 0.86)], [(10, 0.70)]]),
    ("コードに", "NOUN", [[(11, 0.90)], []]),
    ("メッセージを", "NOUN", [[(7, 0.90)], []]),
    ("書き込む", "VERB", [[(6, 0.83)], []]),
    ("仕事は", "NOUN", [[], []]),
    ("数学者が", "NOUN", [[(1, 0.91)], [(1, 0.80)], []]),
    ("行ってきました", "VERB", [[(4, 0.40)], [], []]),
    ("数学者は", "NOUN", [[(22, 0.90), (1, 0.30)], [(22, 0.78)], []]),
    ("生物学者では", "NOUN", [[(25, 0.92)], [(25, 0.80)], []]),
    ("ありません", "VERB", [[(24, 0.50)]]),
    ("数学者が", "NOUN", [[(37, 0.89), (22, 0.35)], [(37, 0.77)], []]),
    ("作成した", "VERB", [[(38, 0.84)], []]),
    ("コードを", "NOUN", [[(34, 0.88)], []]),
    ("使って", "VERB", [[(32, 0.40)]]),
    ("長い", "ADJ", [[(30, 0.83)]]),
    ("メッセージを", "NOUN", [[(31, 0.90)], []]),
    ("書くと", "VERB", [[(29, 0.80)], []]),
    ("新しい", "ADJ", [[(46, 0.88)]]),
    ("タンパク質が", "NOUN", [[(47, 0.94)], [(47, 0.80)], []]),
    ("合成される", "VERB", [[(49, 0.87)], []]),
    ("可能性が", "NOUN", [[], []]),
    ("高い", "ADJ", [[(43, 0.72)]]),
    ("。", "PUNCT", [[]]),
], external_drop={(30, 16)})

# Filler talk: every link is unreliable.
segment("s08", "So/ADV basically/ADV that/PRON 's/AUX it/PRON", [
    ("ええと", "INTJ", [[(0, 0.50)]]),
    ("まあ", "INTJ", [[(1, 0.40)]]),
    ("そういう", "DET", [[(2, 0.60)]]),
    ("ことです", "NOUN", [[(4, 0.30)], []]),
])

# No source content words at all.
segment("s09", "It/PRON is/AUX what/PRON it/PRON is/AUX", [
    ("そういう", "DET", [[(2, 0.80)]]),
    ("ものです", "NOUN", [[(0, 0.75)], []]),
])

# Similarities on both sides of 0.71.
segment("s10", "The/DET green/ADJ line/NOUN station/NOUN is/AUX closed/VERB today/NOUN", [
    ("今日は", "NOUN", [[(6, 0.90)], []]),
    ("緑", "NOUN", [[(1, 0.705)]]),
    ("線の", "NOUN", [[(2, 0.72)], []]),
    ("駅は", "NOUN", [[(3, 0.91)], []]),
    ("閉鎖されています", "VERB", [[(5, 0.88)], [], []]),
])

# Long segment with 23 source content words, 11 of them aligned.
DRUG_SOURCE = (
    "And/CCONJ in/ADP the/DET case/NOUN of/ADP drugs/NOUN to/PART undermine/VERB/2 "
    "this/DET fear/NOUN and/CCONJ prejudice/NOUN/2 that/PRON surrounds/VERB the/DET "
    "issue/NOUN we/PRON managed/VERB to/PART gather/VERB and/CCONJ present/VERB "
    "data/NOUN that/PRON shows/VERB that/SCONJ today/NOUN 's/PART drug/NOUN "
    "policies/NOUN cause/VERB more/ADJ harm/NOUN than/ADP drug/NOUN use/NOUN "
    "and/CCONJ people/NOUN are/AUX starting/VERB to/PART get/VERB it/PRON ./PUNCT")

segment("s11", DRUG_SOURCE, [
    ("ドラッグに", "NOUN", [[(5, 0.90)], []]),
    ("関して", "VERB", [[]]),
    ("恐怖で", "NOUN", [[(9, 0.88)], []]),
    ("あったり", "AUX", [[]]),
    ("偏見を", "NOUN", [[(11, 0.86)], []]),
    ("なくして", "VERB", [[(7, 0.60)]]),
    ("行く", "VERB", [[]]),
    ("為に", "NOUN", [[]]),
    ("データを", "NOUN", [[(22, 0.92)], []]),
    ("見せて", "VERB", [[(21, 0.66)]]),
    ("行く", "VERB", [[]]),
    ("今の", "NOUN", [[(26, 0.80)], []]),
    ("政策の", "NOUN", [[(29, 0.90)], []]),
    ("方が", "NOUN", [[]]),
    ("ドラッグよりも", "NOUN", [[(34, 0.87)], []]),
    ("どんどん", "ADV", [[]]),
    ("悪い", "ADJ", [[(32, 0.75)]]),
    ("結果に", "NOUN", [[(30, 0.73)], []]),
    ("なっている", "VERB", [[]]),
    ("そして", "CCONJ", [[(36, 0.60)]]),
    ("それが", "PRON", [[(42, 0.50)], []]),
    ("人々には", "NOUN", [[(37, 0.91)], []]),
    ("分かり", "VERB", [[(41, 0.65)]]),
    ("始めました", "VERB", [[(39, 0.80)], []]),
    ("。", "PUNCT", [[]]),
])

# Monotone translation.
segment("s12", "The/DET station/NOUN is/AUX on/ADP the/DET green/ADJ line/NOUN", [
    ("駅は", "NOUN", [[(1, 0.90)], []]),
    ("緑の", "NOUN", [[(5, 0.85)], []]),
    ("線に", "NOUN", [[(6, 0.88)], []]),
    ("あります", "VERB", [[(2, 0.60)]]),
])

JUDGMENTS = {
    "s01": 0, "s02": 5, "s03": 30, "s04": 25, "s05": 15, "s06": 40,
    "s07": 92, "s08": 60, "s09": 10, "s10": 20, "s11": 0, "s12": 0,
}


def num(x):
    if x == 0:
        return 0
    if x == 1:
        return 1
    return float(f"{x:.6f}")


def build(seg):
    source_words, src_vectors = [], []
    pos = 0
    for i, (surface, tag, n) in enumerate(seg["source"]):
        source_words.append(dict(surface=surface, pos=tag, is_function=tag in FUNCTION_POS,
                                 span=[pos, pos + n]))
        pos += n
        for _ in range(n):
            v = [0] * DIM
            v[i] = 1
            src_vectors.append(v)
    assert len(seg["source"]) <= CONCEPT_DIMS

    target_words, tgt_vectors = [], []
    pos = 0
    for surface, tag, subwords in seg["target"]:
        target_words.append(dict(surface=surface, pos=tag, is_function=tag in FUNCTION_POS,
                                 span=[pos, pos + len(subwords)]))
        for links in subwords:
            v = [0.0] * DIM
            for s, cos in links:
                v[s] += cos
            rest = 1.0 - sum(x * x for x in v)
            assert rest >= 0
            v[CONCEPT_DIMS + pos % NOISE_DIMS] = math.sqrt(rest)
            tgt_vectors.append([num(x) for x in v])
            pos += 1

    record = dict(id=seg["id"], source=source_words, target=target_words)
    return record, src_vectors, tgt_vectors


def word_links(seg):
    """Word-level (source, target, best cosine) relations of the design."""
    best = {}
    for t, (_, _, subwords) in enumerate(seg["target"]):
        for links in subwords:
            for s, cos in links:
                best[(s, t)] = max(best.get((s, t), 0.0), cos)
    return best


def pharaoh(pairs, possible=()):
    toks = []
    for s, t in sorted(set(pairs) | set(possible)):
        toks.append(f"{s}-{t}" if (s, t) in pairs else f"{s}?{t}")
    return " ".join(toks)


def main():
    with open(os.path.join(HERE, "segments.jsonl"), "w", encoding="utf-8") as seg_f, \
         open(os.path.join(HERE, "embeddings.jsonl"), "w", encoding="utf-8") as emb_f, \
         open(os.path.join(HERE, "external.pharaoh"), "w", encoding="utf-8") as ext_f, \
         open(os.path.join(HERE, "gold.pharaoh"), "w", encoding="utf-8") as gold_f:
        for seg in SEGMENTS:
            record, sv, tv = build(seg)
            seg_f.write(json.dumps(record, ensure_ascii=False, separators=(",", ":")) + "\n")
            for side, vecs in (("source", sv), ("target", tv)):
                emb_f.write(json.dumps(dict(segment_id=seg["id"], side=side, dim=DIM,
                                            vectors=vecs), separators=(",", ":")) + "\n")
            rel = word_links(seg)
            external = {p for p, c in rel.items() if c >= 0.5} - seg["external_drop"]
            external |= set(seg["external_add"])
            ext_f.write(pharaoh(external) + "\n")
            sure = {p for p, c in rel.items() if c >= 0.7}
            possible = {p for p, c in rel.items() if 0.5 <= c < 0.7}
            gold_f.write(pharaoh(sure, possible) + "\n")

    with open(os.path.join(HERE, "judgments.csv"), "w", encoding="utf-8") as f:
        f.write("segment_id,score,kind\n")
        for seg_id, score in JUDGMENTS.items():
            f.write(f"{seg_id},{score},error_based\n")

    content = [w for w in build(SEGMENTS[10])[0]["source"] if not w["is_function"]]
    assert len(content) == 23, len(content)


if __name__ == "__main__":
    main()
