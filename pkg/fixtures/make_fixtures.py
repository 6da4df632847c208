#!/usr/bin/env python3
"""Regenerate the bundled synthetic fixture corpus in this directory.

Deterministic: running it again reproduces the same bytes. The corpus is
30 lore documents over a small monster roster, with enough cross-mentions
that every train/dev/test split contains tagged spans, and with the word
"impressive" planted in 12 documents so the fixture config's ignore
threshold (13) puts "imp", and only "imp", on the ignore list.
"""

import json
import random
from pathlib import Path

HERE = Path(__file__).parent

# Initial name list (one per line in names_core.txt).
CORE_NAMES = [
    "Goblin",
    "Ettin",
    "Green Dragon Wyrmling",
    "Steam Mephit",
    "Mephit",
    "Imp",
    "Owlbear",
    "Unicorn",
    "Bandit",
    "Dragon Turtle",
    "Purple Worm",
    "Djinni",
    "Specter",
    "Harpy",
    "Kobold",
    "Troll",
    "Ogre",
    "Zombie",
    "Skeleton",
    "Lich",
]

# Infobox dump: extra monsters plus spell pages that the type filter drops,
# plus a couple of case-variant duplicates exercising the merge.
INFOBOX_RECORDS = [
    {"page": "Archdevil", "type5e": "fiend"},
    {"page": "Dust Devil", "type5e": "elemental"},
    {"page": "Banshee", "type5e": "undead"},
    {"page": "Ghoul", "type5e": "undead"},
    {"page": "Mimic", "type5e": "monstrosity"},
    {"page": "Basilisk", "type5e": "monstrosity"},
    {"page": "Wyvern", "type5e": "dragon"},
    {"page": "Roc", "type5e": "monstrosity"},
    {"page": "Sahuagin", "type5e": "humanoid"},
    {"page": "Pit Fiend", "type5e": "fiend"},
    {"page": "Fireball", "type5e": "spell"},
    {"page": "Magic Missile", "type5e": "spell"},
    {"page": "Counterspell", "type5e": "spell"},
    {"page": "goblin", "type5e": "humanoid"},
    {"page": "TROLL", "type5e": "giant"},
    {"page": "Sleep", "type5e": "spell"},
]

OWNERS = CORE_NAMES + [
    "Archdevil",
    "Dust Devil",
    "Banshee",
    "Ghoul",
    "Mimic",
    "Basilisk",
    "Wyvern",
    "Roc",
    "Sahuagin",
    "Pit Fiend",
]

PLACES = ["marsh", "caverns", "ruins", "foothills", "catacombs", "harbor"]

TEMPLATES = [
    "The {m} prowls the {place} at night.",
    "Few survive an encounter with a {m}.",
    "Legends say the {m} once served a {m2}.",
    "It is said that the {m} and the {m2} hunt together.",
    "Travellers avoid the {place}, for it is home to the {m}.",
    "Mr. Alden wrote of a {m} seen near the old mill.",
    "Could a {m} defeat a {m2}? The sages disagree.",
    "Scouts reported a {m} crossing the {place}!",
    "A {m} hoards whatever the {m2} leaves behind.",
]

IMPRESSIVE_SENTENCE = "An impressive retinue of servants attends it."


def build_lore() -> dict[str, str]:
    rng = random.Random(73)
    lore: dict[str, str] = {}
    impressive_docs = set(rng.sample(range(len(OWNERS)), 12))
    for index, owner in enumerate(OWNERS):
        if owner == "Roc":
            lore[owner] = ""  # a monster with no written lore
            continue
        others = [name for name in OWNERS if name != owner and name != "Roc"]
        sentences = [f"The {owner.lower()} is a creature of the {rng.choice(PLACES)}."]
        for _ in range(rng.randint(3, 6)):
            template = rng.choice(TEMPLATES)
            m, m2 = rng.sample(others, 2)
            mention = m if rng.random() < 0.4 else m.lower()
            sentences.append(
                template.format(m=mention, m2=m2.lower(), place=rng.choice(PLACES))
            )
        if index in impressive_docs:
            sentences.insert(rng.randrange(1, len(sentences)), IMPRESSIVE_SENTENCE)
        # paragraph break in the middle exercises blank-line segmentation
        middle = len(sentences) // 2
        lore[owner] = " ".join(sentences[:middle]) + "\n\n" + " ".join(sentences[middle:])
    return lore


def main() -> None:
    lore = build_lore()
    (HERE / "lore.json").write_text(
        json.dumps(lore, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )
    (HERE / "names_core.txt").write_text(
        "".join(name + "\n" for name in CORE_NAMES), encoding="utf-8"
    )
    (HERE / "infobox.json").write_text(
        json.dumps(INFOBOX_RECORDS, indent=2, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
    (HERE / "pipeline.ini").write_text(
        "\n".join(
            [
                "[paths]",
                "lore = lore.json",
                "names = names_core.txt",
                "infobox = infobox.json",
                "output_dir = out",
                "",
                "[infobox]",
                "type_key = type5e",
                "exclude = spell",
                "",
                "[gazetteer]",
                "ignore_threshold = 13",
                "case_insensitive = true",
                "",
                "[tagger]",
                "mode = word_boundary",
                "label = MONS",
                "",
                "[split]",
                "ratios = 2/3, 1/6, 1/6",
                "",
            ]
        ),
        encoding="utf-8",
    )
    counts = {owner: len(text) for owner, text in lore.items()}
    print(f"wrote {len(lore)} documents, {sum(counts.values())} chars of lore")


if __name__ == "__main__":
    main()
