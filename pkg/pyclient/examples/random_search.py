"""Random search against a running naxbench service.

Usage:
    python3 -m naxbench.cli serve --data ./naxbench-data &
    python3 random_search.py --suite c10mop --index 5 --evals 1000

Keeps a nondominated archive of everything sampled and prints it.
"""

import argparse

import pyclient


def dominates(a, b):
    return all(x <= y for x, y in zip(a, b)) and any(x < y for x, y in zip(a, b))


def update_archive(archive, x, f):
    for _, g in archive:
        if dominates(g, f) or g == f:
            return archive
    kept = [(y, g) for y, g in archive if not dominates(f, g)]
    kept.append((x, f))
    return kept


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--host", default="127.0.0.1")
    ap.add_argument("--port", type=int, default=pyclient.DEFAULT_PORT)
    ap.add_argument("--suite", default="c10mop")
    ap.add_argument("--index", type=int, default=5)
    ap.add_argument("--evals", type=int, default=1000)
    ap.add_argument("--batch", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    client = pyclient.connect(args.host, args.port)
    inst = pyclient.create(client, args.suite, args.index, seed=args.seed)
    print(f"session {inst.id}: D={inst.n_var} M={inst.n_obj}")

    archive = []
    done = 0
    while done < args.evals:
        n = min(args.batch, args.evals - done)
        X = pyclient.sample(inst, n)
        F = pyclient.evaluate(inst, X)
        for x, f in zip(X, F):
            archive = update_archive(archive, x, f)
        done += n

    print(f"{done} evaluations, {len(archive)} nondominated points:")
    for x, f in sorted(archive, key=lambda p: p[1][0]):
        print(" ", x, "->", [round(v, 6) for v in f])

    pyclient.close(inst)
    client.shutdown()


if __name__ == "__main__":
    main()
