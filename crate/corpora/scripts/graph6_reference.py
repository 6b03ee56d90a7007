"""Write 10,000 random graphs in graph6 using networkx's encoder.

The Rust codec is checked against this file byte for byte, so the file is
produced by an implementation that shares no code with it.
"""
import gzip
import random

import networkx as nx

rng = random.Random(20240611)
lines = []
for i in range(10_000):
    if i % 10 == 0:
        n = rng.randint(63, 140)
    else:
        n = rng.randint(0, 62)
    p = rng.random()
    g = nx.gnp_random_graph(n, p, seed=rng.randrange(2**32))
    lines.append(nx.to_graph6_bytes(g, header=False).decode().strip())

with gzip.open("corpora/graph6_reference.g6.gz", "wt") as f:
    f.write("\n".join(lines) + "\n")
