#!/usr/bin/env python3
"""Generate data/gold/lid_gold.jsonl, the bundled word-LID validation set.

Latin-script tokens are drawn from words that occur in exactly one bundled
wordlist; Ethiopic/Devanagari/Han tokens are unambiguous by script. About 5%
of tokens are out-of-wordlist inflections whose gold tag is the source
language, so the set is not purely trivial. Deterministic via a fixed seed.
"""

import json
import random
import unicodedata
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"

random.seed(20260809)

AMHARIC = """ሰላም አማርኛ ውሃ ምግብ ቤት ትምህርት መጽሐፍ ጊዜ ዛሬ ነገ ትናንት ሥራ ማወቅ ማሰብ መናገር
መስማት ማንበብ መጻፍ ጥሩ አይደለም ነው እና ወይም ግን ምክንያቱም ከሆነ ጥያቄ መልስ ችግር ዘዴ ውጤት
ምሳሌ ክፍል ግማሽ ቁጥር ዋጋ ትክክል ስህተት ሒሳብ ሳይንስ መምህር ተማሪ ጓደኛ ቤተሰብ አባት እናት ልጅ
ወንድ ሴት ነጭ ጥቁር ቀይ ዛፍ አበባ ተራራ ባሕር ወንዝ ፀሐይ ጨረቃ ሰማይ እንስሳ ውሻ ድመት ፈረስ ላም
ዶሮ ወፍ እባብ ዝሆን ዓሣ ልብስ ጫማ ወንበር ጠረጴዛ መስኮት በር ጤና በሽታ መድኃኒት ሐኪም ፖሊስ ወታደር
ገበሬ ውድ ርካሽ ነፃ አገር ከተማ ዓለም ቋንቋ ቃል ገንዘብ መኪና መንገድ""".split()

HINDI = """नमस्ते हिंदी पानी खाना घर विद्यालय किताब समय आज कल काम सीखना जानना सोचना बोलना
सुनना पढ़ना लिखना अच्छा नहीं है और या लेकिन क्योंकि अगर प्रश्न उत्तर समस्या तरीका परिणाम
उदाहरण भाग आधा संख्या मूल्य सही गलत गणित विज्ञान शिक्षक छात्र दोस्त परिवार पिता माता बच्चा
आदमी औरत सफेद काला लाल पेड़ फूल पहाड़ समुद्र नदी सूरज चाँद आकाश जानवर कुत्ता बिल्ली घोड़ा
गाय मुर्गी पक्षी साँप हाथी मछली कपड़ा जूता कुर्सी मेज खिड़की दरवाजा स्वास्थ्य बीमारी दवा
डॉक्टर पुलिस सैनिक किसान कीमत महंगा सस्ता मुफ्त देश शहर दुनिया भाषा शब्द पैसा गाड़ी रास्ता""".split()

PUNCT = [".", ",", "?", "!", ":", ";", "42", "7", "100", "-", "(", ")", "3.14"]


def nfc(s):
    return unicodedata.normalize("NFC", s)


def load_wordlist(path):
    words = set()
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line:
            words.add(nfc(line).lower())
    return words


def main():
    latin_langs = ["en", "sw", "yo", "ig", "id", "ms"]
    lists = {l: load_wordlist(DATA / "wordlists" / f"{l}.txt") for l in latin_langs}
    han_words = sorted(load_wordlist(DATA / "segmenter" / "han.txt"))

    # Words that belong to exactly one Latin wordlist.
    unique = {}
    for lang in latin_langs:
        others = set()
        for o in latin_langs:
            if o != lang:
                others |= lists[o]
        unique[lang] = sorted(lists[lang] - others)

    pools = dict(unique)
    pools["am"] = [nfc(w) for w in AMHARIC]
    pools["hi"] = [nfc(w) for w in HINDI]
    pools["zh"] = han_words

    # Out-of-wordlist "hard" tokens: joined unique-word pairs, still unique
    # to their language and absent from every list.
    all_words = set()
    for ws in lists.values():
        all_words |= ws
    hard = {}
    for lang in ("sw", "id", "yo"):
        combos = []
        ws = unique[lang]
        for i in range(0, min(len(ws) - 1, 40), 2):
            joined = ws[i] + ws[i + 1]
            if joined not in all_words:
                combos.append(joined)
        hard[lang] = combos

    langs = sorted(pools)
    instances = []
    total_tokens = 0
    hard_tokens = 0
    for idx in range(160):
        primary = langs[idx % len(langs)]
        mixing = random.random() < 0.4
        secondary = random.choice([l for l in langs if l != primary]) if mixing else None
        n_words = random.randint(6, 14)
        tokens = []
        for _ in range(n_words):
            r = random.random()
            if r < 0.08:
                tokens.append({"text": random.choice(PUNCT), "lang": "none"})
                continue
            lang = secondary if (secondary and r < 0.35) else primary
            use_hard = lang in hard and hard[lang] and random.random() < 0.07
            if use_hard:
                word = random.choice(hard[lang])
                hard_tokens += 1
            else:
                word = random.choice(pools[lang])
            tokens.append({"text": word, "lang": lang})
        total_tokens += len(tokens)
        instances.append({"text": " ".join(t["text"] for t in tokens), "tokens": tokens})

    out = DATA / "gold" / "lid_gold.jsonl"
    with out.open("w", encoding="utf-8") as f:
        for inst in instances:
            f.write(json.dumps(inst, ensure_ascii=False) + "\n")
    print(f"wrote {len(instances)} instances, {total_tokens} tokens "
          f"({hard_tokens} hard) to {out}")


if __name__ == "__main__":
    main()
