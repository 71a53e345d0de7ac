"""Writes tests/golden/*.json: expected chat messages for each prompt style.

Templates are typed from the published listings, independent of the C++
prompt builder. Run from the repository root.
"""
import json
import pathlib

ROOT = pathlib.Path(__file__).resolve().parents[2]
OUT = ROOT / "tests" / "golden"

RUBRIC = (
    "Score the snippet from '0' to '4', where:\n"
    "0: The code does not implement the algorithm.\n"
    "1: The code shares similarities with the algorithm but most likely does not implement the algorithm.\n"
    "2: The code appears to implement the algorithm, but may not fully match the algorithm's specification.\n"
    "3: The code most likely implements the algorithm with minor variations.\n"
    "4: The code implements the algorithm.\n"
)


def yes_no(method, algo):
    return f"SNIPPET: {method} Does the snippet implement {algo}, only answer with 'Yes' or 'No'?"


def score(method, algo, cot=False):
    tail = ("Lets think step-by-step, then answer with a number from the choices above."
            if cot else "Strictly respond with a number from the choices above.")
    return f"SNIPPET: {method} Does the code snippet implement the algorithm {algo}?\n{RUBRIC}{tail}"


def user(text):
    return {"role": "user", "content": text}


def main():
    method = (ROOT / "data" / "mock" / "fixtures" / "bubble_sort.java").read_text()
    lib = json.loads((ROOT / "data" / "icl" / "examples.json").read_text())
    OUT.mkdir(parents=True, exist_ok=True)
    cases = {
        "yesno_bubble_sort": [user(yes_no(method, "Bubble Sort"))],
        "score_bubble_sort": [user(score(method, "Bubble Sort"))],
        "cot_bubble_sort": [user(score(method, "Bubble Sort", cot=True))],
    }
    gcd = lib["algorithms"]["gcd"]
    for name, pos, neg in (("icl_2p2n_gcd", 2, 2), ("icl_2p0n_gcd", 2, 0)):
        msgs = []
        for ex in gcd["positives"][:pos]:
            msgs += [user(score(ex["source"], "GCD")), {"role": "assistant", "content": "4"}]
        for ex in gcd["similar_negatives"][:neg]:
            msgs += [user(score(ex["source"], "GCD")), {"role": "assistant", "content": "1"}]
        msgs.append(user(score(method, "GCD")))
        cases[name] = msgs
    rnd = []
    for ex in lib["random_negatives"][:2]:
        rnd += [user(score(ex["source"], "GCD")), {"role": "assistant", "content": "0"}]
    rnd.append(user(score(method, "GCD")))
    cases["icl_0p2n_random_gcd"] = rnd
    for name, msgs in cases.items():
        (OUT / f"{name}.json").write_text(json.dumps(msgs, indent=2, ensure_ascii=False) + "\n")


if __name__ == "__main__":
    main()
