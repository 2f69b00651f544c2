#!/usr/bin/env python3
"""Generate data/corpus/synthetic_200.jsonl, the bundled demo corpus.

200 reasoning traces across five prompt languages and two synthetic models.
Reasoning text is sampled from the bundled wordlists; roughly half the traces
reason with English as the dominant language, and planted correctness depends
positively on that, so the metrics -> report -> fit pipeline has signal to
find. Deterministic via a fixed seed.
"""

import json
import math
import random
import unicodedata
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"

random.seed(42424242)

AMHARIC = """ሰላም ውሃ ምግብ ቤት ትምህርት መጽሐፍ ጊዜ ዛሬ ሥራ ጥያቄ መልስ ችግር ዘዴ ውጤት ምሳሌ
ክፍል ግማሽ ቁጥር ዋጋ ትክክል ሒሳብ ሳይንስ መምህር ተማሪ ጓደኛ ቤተሰብ አባት እናት ልጅ ዓለም ቋንቋ ቃል""".split()

HINDI = """पानी खाना घर विद्यालय किताब समय आज काम प्रश्न उत्तर समस्या तरीका परिणाम उदाहरण
भाग आधा संख्या मूल्य सही गणित विज्ञान शिक्षक छात्र दोस्त परिवार देश शहर दुनिया भाषा शब्द""".split()


def nfc(s):
    return unicodedata.normalize("NFC", s)


def load_wordlist(path):
    words = []
    seen = set()
    for line in path.read_text(encoding="utf-8").splitlines():
        w = nfc(line.strip()).lower()
        if w and w not in seen:
            seen.add(w)
            words.append(w)
    return words


def sample_line(rng, primary_pool, secondary_pool, secondary_share, n_words):
    words = []
    for _ in range(n_words):
        if rng.random() < secondary_share:
            words.append(rng.choice(secondary_pool))
        else:
            words.append(rng.choice(primary_pool))
        if rng.random() < 0.05:
            words.append(str(rng.randint(1, 99)))
    return " ".join(words)


def main():
    pools = {
        "sw": load_wordlist(DATA / "wordlists" / "sw.txt"),
        "yo": load_wordlist(DATA / "wordlists" / "yo.txt"),
        "id": load_wordlist(DATA / "wordlists" / "id.txt"),
        "en": load_wordlist(DATA / "wordlists" / "en.txt"),
        "am": [nfc(w) for w in AMHARIC],
        "hi": [nfc(w) for w in HINDI],
    }
    prompt_languages = ["sw", "yo", "id", "am", "hi"]
    models = ["demo-reasoner-a", "demo-reasoner-b"]
    domains = ["math", "logic", "physics", "history"]
    letters = "ABCD"

    traces = []
    for i in range(200):
        lang = prompt_languages[i % len(prompt_languages)]
        model = models[(i // len(prompt_languages)) % len(models)]
        english_matrix = random.random() < 0.5
        if english_matrix:
            primary, secondary = pools["en"], pools[lang]
            share = random.uniform(0.05, 0.30)
        else:
            primary, secondary = pools[lang], pools["en"]
            share = random.uniform(0.0, 0.25)

        lines = []
        for _ in range(random.randint(3, 6)):
            lines.append(sample_line(random, primary, secondary, share,
                                     random.randint(8, 16)))
        reasoning = "\n".join(lines)

        prompt = sample_line(random, pools[lang], pools[lang], 0.0,
                             random.randint(8, 14)) + " ?"
        gold = random.choice(letters)
        p_correct = 1.0 / (1.0 + math.exp(-(-0.4 + 1.4 * (1 if english_matrix else 0))))
        correct = random.random() < p_correct
        answer_letter = gold if correct else random.choice(
            [c for c in letters if c != gold])
        answer = sample_line(random, primary, secondary, share, 4) + \
            f" ({answer_letter})"

        traces.append({
            "id": f"trace-{i:04d}",
            "model": model,
            "prompt_language": lang,
            "dataset": "synthetic-demo",
            "domain": random.choice(domains),
            "prompt": prompt,
            "reasoning": reasoning,
            "answer": answer,
            "gold": gold,
            "correct": correct,
        })

    out = DATA / "corpus" / "synthetic_200.jsonl"
    with out.open("w", encoding="utf-8") as f:
        for t in traces:
            f.write(json.dumps(t, ensure_ascii=False) + "\n")
    n_en = sum(1 for t in traces if t["correct"])
    print(f"wrote {len(traces)} traces to {out} ({n_en} correct)")


if __name__ == "__main__":
    main()
