#!/usr/bin/env python3
"""Writes data/synthetic_news.jsonl: 2 countries x 5 categories x 50 documents.

Each (country, category) cell has a target valence. Every body sentence
carries exactly one lexicon word, drawn so the sentence scores average out
near the target, plus the odd sentence with an opposite-signed word as noise.
"""

import argparse
import json
import random
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent

TARGETS = {
    # US likes sports and dislikes politics; GB is the mirror image.
    "US": {"sports": 1.5, "entertainment": 0.75, "technology": 0.0, "business": -0.75, "politics": -1.5},
    "GB": {"politics": 1.5, "business": 0.75, "technology": 0.0, "entertainment": -0.75, "sports": -1.5},
}

TOPICS = {
    "politics": ["election", "minister", "parliament", "senate", "ballot", "cabinet", "governor", "campaign"],
    "sports": ["match", "team", "league", "coach", "season", "stadium", "striker", "tournament"],
    "business": ["market", "shares", "bank", "trade", "retailer", "earnings", "merger", "investor"],
    "entertainment": ["film", "music", "screening", "actor", "album", "soundtrack", "concert", "director"],
    "technology": ["software", "chip", "startup", "robot", "network", "device", "cloud", "platform"],
}

PLACES = {"US": ["Chicago", "Boston", "Denver", "Austin"], "GB": ["Leeds", "Bristol", "Glasgow", "Cardiff"]}

TEMPLATES = [
    "The {topic} news from {place} was {word} for the people there this week.",
    "Observers said the {topic} in {place} had been {word} and it was widely discussed.",
    "In {place} the latest {topic} report was described as {word} by many of those watching.",
    "It was a {word} day for the {topic} in {place} and people talked about it at length.",
    "Residents of {place} called the {topic} outcome {word} after a long week of coverage.",
]

NEUTRAL = [
    "The {topic} story from {place} is due to be followed up by reporters on Monday.",
    "More details about the {topic} in {place} are expected later in the month.",
]


def load_lexicon():
    words = {}
    for line in (ROOT / "data" / "default_lexicon.tsv").read_text().splitlines():
        if not line or line.startswith("#"):
            continue
        word, valence = line.split("\t")
        words[word] = float(valence)
    return words


def pick_valence(rng, target):
    # Mix the two integer valences around the target so the mean matches it.
    lo = max(-2, min(1, int(target // 1)))
    hi = lo + 1
    options = [v for v in (lo, hi) if v != 0]
    if target == 0:
        return rng.choice([-1, 1])
    if len(options) == 1:
        return options[0]
    frac = target - lo
    return hi if rng.random() < frac else lo


def adjective_pool(lexicon):
    pool = {-2: [], -1: [], 1: [], 2: []}
    for word, valence in lexicon.items():
        if word.isalpha() and int(valence) in pool and valence == int(valence):
            pool[int(valence)].append(word)
    for v in pool:
        pool[v].sort()
    return pool


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--output", default=str(ROOT / "data" / "synthetic_news.jsonl"))
    ap.add_argument("--per-cell", type=int, default=50)
    ap.add_argument("--seed", type=int, default=20240601)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    lexicon = load_lexicon()
    pool = adjective_pool(lexicon)
    for topic_words in TOPICS.values():
        for w in topic_words:
            assert w not in lexicon, w

    docs = []
    serial = 0
    for country, cells in TARGETS.items():
        for category, target in cells.items():
            for _ in range(args.per_cell):
                serial += 1
                topics = TOPICS[category]
                place = rng.choice(PLACES[country])
                sentences = []
                for _ in range(rng.randint(4, 7)):
                    topic = rng.choice(topics)
                    if rng.random() < 0.1:
                        sentences.append(rng.choice(NEUTRAL).format(topic=topic, place=place))
                        continue
                    valence = pick_valence(rng, target)
                    if rng.random() < 0.08:
                        valence = -valence  # stray opinion
                    word = rng.choice(pool[valence])
                    sentences.append(rng.choice(TEMPLATES).format(topic=topic, place=place, word=word))
                title_words = rng.sample(topics, 3)
                title = f"{title_words[0].capitalize()} {title_words[1]} and {title_words[2]} in {place}"
                day = 1 + serial % 28
                docs.append({
                    "id": f"{country.lower()}-{category[:3]}-{serial:04d}",
                    "title": title,
                    "text": " ".join(sentences),
                    "country": country,
                    "category": category,
                    "language": "en",
                    "published": f"2024-06-{day:02d}T{serial % 24:02d}:00:00Z",
                })
    rng.shuffle(docs)
    with open(args.output, "w") as out:
        for d in docs:
            out.write(json.dumps(d) + "\n")
    print(f"wrote {len(docs)} documents to {args.output}")


if __name__ == "__main__":
    main()
