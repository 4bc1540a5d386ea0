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
"""Regenerates src/unicode_fold_table.inc.

For every non-ASCII codepoint outside the Devanagari block, takes the NFKD
decomposition, drops combining marks and any remaining non-ASCII
characters, and records the ASCII residue when it is non-empty.
"""

import sys
import unicodedata


def fold(ch):
    decomposed = unicodedata.normalize("NFKD", ch)
    kept = [c for c in decomposed
            if not unicodedata.category(c).startswith("M") and ord(c) < 0x80]
    return "".join(kept)


LICENSE = """// Copyright 2026 The CIR Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

"""


def c_escape(s):
    return s.replace("\\", "\\\\").replace('"', '\\"')


def main():
    out = sys.stdout
    out.write(LICENSE)
    out.write("// Generated by tools/gen_fold_table.py (Unicode %s). Do not edit.\n"
              % unicodedata.unidata_version)
    count = 0
    for cp in range(0x80, 0x110000):
        if 0x0900 <= cp <= 0x097F or 0xD800 <= cp <= 0xDFFF:
            continue
        residue = fold(chr(cp))
        if residue and all(0x20 <= ord(c) < 0x7F for c in residue):
            out.write('{0x%04X, "%s"},\n' % (cp, c_escape(residue)))
            count += 1
    sys.stderr.write("%d entries\n" % count)


if __name__ == "__main__":
    main()
