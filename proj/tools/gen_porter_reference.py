#!/usr/bin/env python3
"""Writes tests/data/porter_reference.tsv (word<TAB>stem) using NLTK's Porter
stemmer in MARTIN_EXTENSIONS mode, which follows the reference C
implementation. Needs `pip install nltk`; the output is committed so the
C++ tests do not."""

import json
import re
from pathlib import Path

from nltk.stem.porter import PorterStemmer

ROOT = Path(__file__).resolve().parent.parent

CLASSIC = """
caresses ponies ties caress cats feed agreed disabled matting mating meeting milling messing meetings
happy sky relational conditional rational valenci hesitanci digitizer conformabli radicalli differentli
vileli analogousli vietnamization predication operator feudalism decisiveness hopefulness callousness
formaliti sensitiviti sensibiliti triplicate formative formalize electriciti electrical hopeful goodness
revival allowance inference airliner gyroscopic adjustable defensible irritant replacement adjustment
dependent adoption homologou communism activate angulariti homologous effective bowdlerize probate rate
cease controll roll generalizations oscillators knightly knights bliss possibly archaeologist apology
logical analogical biologically abli ably sensibly bly y by is as us gas was this sing sings singing
generous generously generosity agreement agree agreeing plastered bled motoring sized hoping hopping
tanned falling hissing fizzed failing filing conflated troubled sized fitting hoped hopped filed
cries died lying dying tied dies ski skis news sized rational national nationalism nationalize nation
""".split()

SUFFIXES = ["", "s", "es", "ed", "ing", "ly", "ness", "ful", "less", "ment", "ation", "ational", "ize",
            "izer", "ization", "ive", "iveness", "ous", "ousness", "al", "ally", "ance", "ence", "er",
            "ism", "ist", "ity", "ible", "able", "ant", "ent", "ement", "ion", "ic", "ical", "ness"]


def words_from(text):
    return re.findall(r"[a-z]+", text.lower())


def main():
    stem = PorterStemmer(mode=PorterStemmer.MARTIN_EXTENSIONS).stem
    vocab = set(CLASSIC)
    for line in (ROOT / "data" / "default_lexicon.tsv").read_text().splitlines():
        if line and not line.startswith("#"):
            vocab.add(line.split("\t")[0])
    for line in (ROOT / "data" / "synthetic_news.jsonl").read_text().splitlines():
        d = json.loads(line)
        vocab.update(words_from(d["title"] + " " + d["text"]))
    bases = sorted(w for w in vocab if w.isalpha() and len(w) >= 3)
    for b in bases[::7]:
        for s in SUFFIXES:
            vocab.add(b + s)
    rows = sorted(w for w in vocab if w.isalpha())
    out = ROOT / "tests" / "data" / "porter_reference.tsv"
    with open(out, "w") as f:
        for w in rows:
            f.write(f"{w}\t{stem(w)}\n")
    print(f"wrote {len(rows)} pairs to {out}")


if __name__ == "__main__":
    main()
