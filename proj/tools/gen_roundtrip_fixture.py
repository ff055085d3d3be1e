#!/usr/bin/env python3
# Copyright 2026 The mfscore Authors.
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
"""Writes the Penman round-trip fixture corpus.

Every graph is a random tree over a small AMR-like vocabulary, decorated
with reentrant bare-variable mentions, inverse roles, quoted names, numbers
and polarity. The output is deterministic for a given seed.

  python3 tools/gen_roundtrip_fixture.py > tests/data/roundtrip_100.amr
"""

import argparse
import random
import sys

EVENTS = ["want-01", "go-02", "say-01", "see-01", "cause-01", "fear-01",
          "possible-01", "tell-01", "injure-01", "defuse-01", "expire-01",
          "play-01", "responsible-02", "believe-01"]
ENTITIES = ["boy", "girl", "cat", "dog", "soldier", "bomb", "story", "we",
            "parrot", "state", "emergency", "flute", "teacher"]
NAMED = ["city", "country", "person", "organization"]
NAMES = [["Kathmandu"], ["New", "York"], ["Mary"], ["United", "Nations"],
         ["Paris"], ["Tom", "O'Neil"]]
ARG_ROLES = ["ARG0", "ARG1", "ARG2"]
MOD_ROLES = ["mod", "location", "time", "manner", "purpose"]


class Builder:

  def __init__(self, rng):
    self.rng = rng
    self.count = {}
    self.defined = []
    self.features = set()

  def var(self, concept):
    letter = concept[0].lower()
    n = self.count.get(letter, 0)
    self.count[letter] = n + 1
    v = letter if n == 0 else "%s%d" % (letter, n + 1)
    self.defined.append(v)
    return v

  def name_node(self, depth):
    kind = self.rng.choice(NAMED)
    v = self.var(kind)
    n = self.var("name")
    ops = self.rng.choice(NAMES)
    indent = "  " * (depth + 1)
    parts = ["(%s / %s" % (v, kind), "\n%s:name (%s / name" % (indent, n)]
    for i, op in enumerate(ops, 1):
      parts.append(" :op%d \"%s\"" % (i, op))
    parts.append("))")
    self.features.add("quoted")
    return "".join(parts)

  def node(self, depth):
    rng = self.rng
    if depth >= 3 or rng.random() < 0.3 * depth:
      if rng.random() < 0.3:
        return self.name_node(depth)
      concept = rng.choice(ENTITIES)
      return "(%s / %s)" % (self.var(concept), concept)
    concept = rng.choice(EVENTS)
    v = self.var(concept)
    indent = "  " * (depth + 1)
    out = ["(%s / %s" % (v, concept)]
    roles = rng.sample(ARG_ROLES, rng.randint(1, 3))
    for role in roles:
      if self.defined[:-1] and rng.random() < 0.2:
        out.append("\n%s:%s %s" % (indent, role, rng.choice(self.defined[:-1])))
        self.features.add("reentrancy")
      else:
        out.append("\n%s:%s %s" % (indent, role, self.node(depth + 1)))
    if rng.random() < 0.35:
      role = rng.choice(ARG_ROLES + ["mod", "location"]) + "-of"
      out.append("\n%s:%s %s" % (indent, role, self.node(depth + 1)))
      self.features.add("inverse")
    if rng.random() < 0.3:
      out.append("\n%s:%s %s" % (indent, rng.choice(MOD_ROLES), self.node(depth + 1)))
    if rng.random() < 0.3:
      out.append("\n%s:polarity -" % indent)
      self.features.add("polarity")
    if rng.random() < 0.15:
      out.append("\n%s:quant %d" % (indent, rng.randint(1, 99)))
    out.append(")")
    return "".join(out)


def graph(rng):
  while True:
    b = Builder(rng)
    text = b.node(0)
    if len(b.defined) >= 2:
      return text, b.features


def main():
  parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
  parser.add_argument("--count", type=int, default=100)
  parser.add_argument("--seed", type=int, default=20261014)
  args = parser.parse_args()
  rng = random.Random(args.seed)
  seen = set()
  out = sys.stdout
  out.write("# Round-trip fixture written by tools/gen_roundtrip_fixture.py\n\n")
  for i in range(1, args.count + 1):
    text, features = graph(rng)
    seen |= features
    out.write("# ::id rt.%d\n" % i)
    out.write("# ::features %s\n" % (" ".join(sorted(features)) or "none"))
    out.write(text + "\n\n")
  missing = {"reentrancy", "inverse", "quoted", "polarity"} - seen
  if missing:
    sys.exit("fixture lacks: %s" % ", ".join(sorted(missing)))


if __name__ == "__main__":
  main()
