#!/usr/bin/env python3
# Copyright 2026 The CIR Authors
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
"""Regenerates tests/fixtures/porter_pairs.tsv.

Vocabulary: lowercase alphabetic words harvested from the Python standard
library sources plus a disaster-relief word list. Expected stems come from
NLTK's PorterStemmer in MARTIN_EXTENSIONS mode, which reproduces the output
of the reference C implementation.
"""

import collections
import pathlib
import re
import sys
import sysconfig

from nltk.stem.porter import PorterStemmer

EXTRA = """
need needs needed needing shelter shelters sheltered tent tents water
drinking food supplies supply supplied medicine medicines medical doctors
volunteers volunteering injured trapped rescue rescued rescuing relief
earthquake quake aftershock aftershocks donation donations donating
available availability distributing distributed distribution blankets
ambulance ambulances hospital hospitals emergency urgent urgently helping
caresses ponies ties caress cats feed agreed plastered bled motoring sing
conflated troubled sized hopping tanned falling hissing fizzed failing
filing happy sky relational conditional rational valenci hesitanci
digitizer conformabli radicalli differentli vileli analogousli
vietnamization predication operator feudalism decisiveness hopefulness
callousness formaliti sensitiviti sensibiliti triplicate formative
formalize electriciti electrical hopeful goodness revival allowance
inference airliner gyroscopic adjustable defensible irritant replacement
adjustment dependent adoption homologou communism activate angulariti
homologous effective bowdlerize probate rate cease controll roll
generalizations oscillators
"""


LICENSE = """# Copyright 2026 The CIR Authors
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

"""


def main():
    root = pathlib.Path(sysconfig.get_paths()["stdlib"])
    counts = collections.Counter()
    for path in sorted(root.glob("*.py")):
        text = path.read_text(encoding="utf-8", errors="ignore")
        counts.update(w for w in re.findall(r"[a-z]+", text) if len(w) >= 3)
    words = {w for w, _ in counts.most_common(4000)}
    words.update(EXTRA.split())
    stemmer = PorterStemmer(mode=PorterStemmer.MARTIN_EXTENSIONS)
    out = sys.stdout
    out.write(LICENSE)
    out.write("# word<TAB>stem, reference Porter output (NLTK MARTIN_EXTENSIONS)\n")
    for w in sorted(words):
        out.write("%s\t%s\n" % (w, stemmer.stem(w, to_lowercase=False)))


if __name__ == "__main__":
    main()
