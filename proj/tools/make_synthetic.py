#!/usr/bin/env python3
"""Writes the synthetic 50-instance evaluation set and its side artifacts.

Usage: make_synthetic.py OUT_DIR

Output is a pure function of the fixed seed below: rerunning overwrites the
files with identical bytes.
"""

import hashlib
import json
import random
import sys
from pathlib import Path

SEED = 20240917
DIM = 8
N = 50

EN_POS = ["great", "lovely", "fair", "wonderful", "pleasant", "helpful"]
EN_NEG = ["terrible", "awful", "bloody", "horrible", "rude", "useless"]
EN_TOXIC = ["stupid", "idiotic", "damn", "dumb"]
EN_CLEAN = ["unwise", "odd", "very", "silly"]
EN_SUBJ = ["the waiter", "the movie", "my neighbour", "the hotel", "this phone", "the teacher"]
EN_VERB = ["was", "seemed", "looked", "felt"]
EN_TAIL = ["to me", "today", "all week", "at the end", "for them"]

HI_POS = ["अच्छा", "सुंदर", "बढ़िया"]
HI_NEG = ["बुरा", "खराब", "बेकार"]
HI_SUBJ = ["खाना", "होटल", "फ़िल्म", "फ़ोन"]
HI_TAIL = ["था", "है", "लगा"]

BN_POS = ["ভালো", "সুন্দর", "চমৎকার"]
BN_NEG = ["খারাপ", "বাজে", "জঘন্য"]
BN_SUBJ = ["খাবার", "হোটেল", "ছবি", "ফোন"]
BN_TAIL = ["ছিল", "লাগল", "হয়"]

LEXICON = sorted(set(EN_POS + EN_NEG + EN_TOXIC + EN_CLEAN + HI_POS + HI_NEG + BN_POS + BN_NEG))

LAYOUT = (
    [("en", "sentiment_transfer")] * 16
    + [("hi", "sentiment_transfer")] * 9
    + [("bn", "sentiment_transfer")] * 9
    + [("en", "detoxification")] * 10
    + [("hi", "detoxification")] * 6
)
assert len(LAYOUT) == N


def word_vector(word):
    h = hashlib.sha256(word.encode("utf-8")).digest()
    r = random.Random(int.from_bytes(h[:8], "little"))
    return [round(r.uniform(-1.0, 1.0), 6) for _ in range(DIM)]


def sentence_parts(rng, lang, task, polarity):
    """Returns (subject words, verb, style word, tail words, final punct)."""
    if lang == "en":
        words = {
            ("sentiment_transfer", 0): EN_NEG,
            ("sentiment_transfer", 1): EN_POS,
            ("detoxification", 0): EN_TOXIC,
            ("detoxification", 1): EN_CLEAN,
        }[(task, polarity)]
        return rng.choice(EN_SUBJ).split(), rng.choice(EN_VERB), rng.choice(words), rng.choice(EN_TAIL).split(), "."
    if lang == "hi":
        words = HI_NEG if polarity == 0 else HI_POS
        return [rng.choice(HI_SUBJ)], "बहुत", rng.choice(words), [rng.choice(HI_TAIL)], "।"
    words = BN_NEG if polarity == 0 else BN_POS
    return [rng.choice(BN_SUBJ)], "খুব", rng.choice(words), [rng.choice(BN_TAIL)], "।"


def render(parts):
    subj, verb, style, tail, punct = parts
    tokens = subj + [verb, style] + tail + [punct]
    return " ".join(tokens[:-1]) + punct, tokens


def conllu(instance_id, slot, tokens):
    # The style word heads the sentence; everything else attaches to it.
    style_idx = next(i for i, t in enumerate(tokens) if t in LEXICON) if any(t in LEXICON for t in tokens) else 1
    lines = [f"# instance_id = {instance_id}", f"# slot = {slot}"]
    for i, tok in enumerate(tokens):
        idx = i + 1
        if i == style_idx:
            head, rel, upos = 0, "root", "ADJ"
        elif tok in ".।":
            head, rel, upos = style_idx + 1, "punct", "PUNCT"
        elif i < style_idx - 1:
            head, rel, upos = style_idx, "det" if i == 0 and len(tokens) > 4 else "nsubj", "NOUN"
        elif i == style_idx - 1:
            head, rel, upos = style_idx + 1, "cop", "AUX"
        else:
            head, rel, upos = style_idx + 1, "obl", "ADV"
        lines.append(f"{idx}\t{tok}\t{tok.lower()}\t{upos}\t_\t_\t{head}\t{rel}\t_\t_")
    return "\n".join(lines) + "\n\n"


def penman(instance_id, slot, tokens):
    content = [t.lower() for t in tokens if t not in ".।"]
    style = next((t for t in content if t in LEXICON), content[0])
    others = [t for t in content if t != style][:3]
    body = f"(s / {style}"
    for k, w in enumerate(others):
        body += f" :ARG{k} (a{k} / {w})"
    body += ")"
    return f"# instance_id = {instance_id}\n# slot = {slot}\n{body}\n\n"


def dist(rng, polarity_strength):
    p1 = min(0.99, max(0.01, polarity_strength + rng.uniform(-0.08, 0.08)))
    return [round(1.0 - p1, 6), round(p1, 6)]


def main():
    out = Path(sys.argv[1])
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(SEED)

    dataset = [{"rating_scales": {"content_preservation": {"min": 1, "max": 5},
                                  "fluency": {"min": 1, "max": 5},
                                  "style_accuracy": {"min": 1, "max": 5}}}]
    dists, tokens_out, external, conll, amr = [], [], [], [], []

    for n, (lang, task) in enumerate(LAYOUT):
        iid = f"{lang}-{task[:4]}-{n:03d}"
        src_pol = rng.randint(0, 1) if task == "sentiment_transfer" else 0
        tgt_pol = 1 - src_pol
        if task == "sentiment_transfer":
            direction = "neg→pos" if src_pol == 0 else "pos→neg"
        else:
            direction = "toxic→clean"
        src_parts = sentence_parts(rng, lang, task, src_pol)
        source_text, src_tok = render(src_parts)

        # System quality knobs drive both artifacts and human ratings.
        transfer = rng.random()
        keep = rng.random()
        flipped = transfer > 0.35
        subj, verb, style, tail, punct = src_parts
        g_style = sentence_parts(rng, lang, task, tgt_pol if flipped else src_pol)[2]
        g_subj = subj if keep > 0.3 else sentence_parts(rng, lang, task, 0)[0]
        g_tail = tail if keep > 0.55 else sentence_parts(rng, lang, task, 0)[3]
        generated_text, gen_tok = render((g_subj, verb, g_style, g_tail, punct))
        ref_style = sentence_parts(rng, lang, task, tgt_pol)[2]
        reference_text, ref_tok = render((subj, verb, ref_style, tail, punct))
        has_ref = n % 10 != 7

        content_overlap = len(set(gen_tok) & set(src_tok)) / len(set(src_tok))
        style_h = 1 + 4 * min(1.0, max(0.0, (0.8 if flipped else 0.15) + 0.2 * transfer + rng.gauss(0, 0.1)))
        content_h = 1 + 4 * min(1.0, max(0.0, content_overlap + rng.gauss(0, 0.08)))
        fluency_h = 1 + 4 * min(1.0, max(0.0, 0.6 + 0.3 * keep + rng.gauss(0, 0.1)))
        human = {"style_accuracy": round(style_h, 2), "content_preservation": round(content_h, 2),
                 "fluency": round(fluency_h, 2)}
        if n % 17 == 5:
            del human["fluency"]

        rec = {"instance_id": iid, "language": lang, "task": task, "direction": direction,
               "system_id": f"sys{n % 4}", "source_text": source_text, "generated_text": generated_text,
               "target_style_label": tgt_pol, "human": human}
        if has_ref:
            rec["reference_text"] = reference_text
        dataset.append(rec)

        src_strength = 0.85 if src_pol == 1 else 0.15
        gen_pol_strength = (0.5 + (transfer - 0.35) * 0.7) if flipped else 0.3 * transfer
        gen_strength = gen_pol_strength if tgt_pol == 1 else 1.0 - gen_pol_strength
        slots = [("source", src_tok, src_strength), ("generated", gen_tok, gen_strength)]
        if has_ref:
            slots.append(("reference", ref_tok, 0.85 if tgt_pol == 1 else 0.15))
        for slot, toks, strength in slots:
            dists.append({"instance_id": iid, "slot": slot, "class_labels": ["style_0", "style_1"],
                          "probs": dist(rng, strength)})
            vecs = [word_vector(t) for t in toks]
            sent = [round(sum(v[d] for v in vecs) / len(vecs), 6) for d in range(DIM)]
            idf = [round(1.0 + (hashlib.sha256(t.encode()).digest()[0] / 255.0) * 3.0, 6) for t in toks]
            tokens_out.append({"instance_id": iid, "slot": slot, "tokens": toks, "embeddings": vecs,
                               "sentence_embedding": sent, "idf": idf})
            masked = [t for t in toks if t not in LEXICON]
            mvecs = [word_vector(t) for t in masked]
            msent = [round(sum(v[d] for v in mvecs) / len(mvecs), 6) for d in range(DIM)]
            tokens_out.append({"instance_id": iid, "slot": slot + "_masked", "tokens": masked,
                               "embeddings": mvecs, "sentence_embedding": msent})
            conll.append(conllu(iid, slot, toks))
            amr.append(penman(iid, slot, toks))

        fluency_noise = rng.gauss(0, 6)
        base_ppl = max(5.0, 80.0 - 50.0 * keep + fluency_noise)
        for metric, scale in [("ppl_gpt2", 1.0), ("ppl_mgpt", 1.3), ("ppl_gpt2_ft", 0.7), ("ppl_mgpt_ft", 0.9)]:
            external.append({"instance_id": iid, "metric_id": metric,
                             "value": round(base_ppl * scale + rng.uniform(0, 4), 4)})
        external.append({"instance_id": iid, "metric_id": "bleurt",
                         "value": round(content_overlap * 0.8 + rng.gauss(0, 0.05), 4)})
        external.append({"instance_id": iid, "metric_id": "s3bert",
                         "value": round(content_overlap * 0.6 + rng.gauss(0, 0.07), 4)})

    def jsonl(name, records):
        with open(out / name, "w", encoding="utf-8", newline="\n") as f:
            for r in records:
                f.write(json.dumps(r, ensure_ascii=False, sort_keys=True) + "\n")

    jsonl("dataset.jsonl", dataset)
    jsonl("style_dists.jsonl", dists)
    jsonl("tokens.jsonl", tokens_out)
    jsonl("external_scores.jsonl", external)
    (out / "parses.conllu").write_text("".join(conll), encoding="utf-8")
    (out / "amr.penman").write_text("".join(amr), encoding="utf-8")
    (out / "lexicon.txt").write_text("\n".join(LEXICON) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
