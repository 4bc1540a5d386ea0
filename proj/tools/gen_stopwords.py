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
"""Regenerates data/stopwords_{hi,ne}.txt in romanized form.

The Devanagari source lists below are romanized with data/devanagari.tsv
using the same inherent-vowel rule as the C++ transliterator. Resource
words (need/want/home/water) are deliberately absent from the sources.
"""

import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent

HINDI = """
अंदर अत अदि अप अपना अपनि अपनी अपने अभि अभी आदि आप इंहिं इंहें इंहों इतयादि
इत्यादि इन इनका इन्हीं इन्हें इन्हों इस इसका इसकि इसकी इसके इसमें इसि इसी इसे
उंहिं उंहें उंहों उन उनका उनकि उनकी उनके उनको उन्हीं उन्हें उन्हों उस उसके उसि
उसी उसे एक एवं एस एसे ऐसे ओर और कइ कई कर करता करते करना करने करें कहते कहा
का काफि काफ़ी कि किंहें किंहों कितना किन्हें किन्हों किया किर किस किसि किसी
किसे की कुछ कुल के को कोइ कोई कोन कोनसा कौन कौनसा गया जब जहाँ जहां जा जिंहें
जिंहों जितना जिधर जिन जिन्हें जिन्हों जिस जिसे जीधर जेसा जेसे जैसा जैसे जो
तक तब तरह तिंहें तिंहों तिन तिन्हें तिन्हों तिस तिसे तो था थि थी थे दबारा
दवारा दिया दुसरा दुसरे दूसरे दो द्वारा न नहिं नहीं ना निचे निहायत नीचे ने
पर पहले पुरा पूरा पे फिर बनि बनी बहि बही बहुत बाद बाला बिलकुल भि भितर भी
भीतर मगर मानो मे में यदि यह यहाँ यहां यहि यही या यिह ये रखें रवासा रहा रहे
लिए लिये लेकिन व वगेरह वरग वर्ग वह वहाँ वहां वहिं वहीं वाले वुह वे वग़ैरह
संग सकता सकते सबसे सभि सभी साथ साबुत साभ सारा से सो हि ही हुअ हुआ हुइ हुई
हुए हे हें है हैं हो होता होति होती होते होना होने अपनों अब इसलिए उनका उसका
उसकी उसने किसने किसका जिसका जिसकी जिसके जिसने तुम तुम्हारा तुम्हारी तुम्हारे
मैं मेरा मेरी मेरे मुझे मुझको हम हमारा हमारी हमारे हमें हमको आपका आपकी आपके
आपको वो यानी अगर क्या क्यों कैसे कहाँ कब जी रहता रहती रही गयी गई गए गये
"""

NEPALI = """
अक्सर अगाडि अझै अनुसार अन्तर्गत अन्य अन्यत्र अन्यथा अब अरु अरुलाई अर्को अर्थात
अर्थात् अलग आए आजको आठ आत्म आदि आफू आफ्नो आफ्नै आफ्नोलाई आफैलाई आफैं आयो
उदाहरण उन उनको उनले उप उहाँलाई एउटै एक एकदम औं कतै कसरी कसै कसैले कहाँबाट
कहिलेकाहीं कहिल्यै कहीं का कि किन किनभने कुनै कुरा कृपया के केहि केही को कोही
क्रमशः गए गरि गरी गरेका गरेको गरेर गरौं गर्छ गर्छु गर्दै गर्न गर्नु गर्नुपर्छ
गर्ने गैर चार चाले छ छन् छु छैन छौँ छौं जताततै जब जबकि जसको जसबाट जसमा
जसलाई जसले जस्तै जस्तो जस्तोसुकै जहाँ जान जाहिर जुन जे जो ठीक त तत्काल तथा
तदनुसार तपाइँको तपाईं तर तल तापनि तिनी तिनीहरू तिनीहरूको तिनीहरूलाई तिनीहरूले
तिमी तिर ती तीन तुरुन्तै तेस्रो त्यसकारण त्यसपछि त्यसमा त्यसैले त्यहाँ त्यो
थिए थिएन थिएनन् थियो दिए दिनुभएको दिनुहुन्छ दुई देख देखि देखिन्छ देखियो देखे
देखेको देखेर दोस्रो धेरै न नजिकै नत्र नयाँ नि निम्ति निम्न नै नौ पक्का पक्कै
पछि पछिल्लो पटक पर्छ पर्थ्यो पहिले पहिलो पाँच पाँचौं पूर्व प्रति प्रत्येक
प्लस फेरि बने बन्द बन्न बरु बारे बाहिर बाहेक बीच बीचमा भए भएको भन भने भन्छु
भन्दा भन्नुभयो भन्ने भर भित्र भित्री म मलाई मा मात्र माथि मुख्य मेरो यति
यथोचित यदि यद्यपि यस यसको यसपछि यसबाहेक यसरी यसो यस्तो यहाँ यहाँसम्म या यी
यो र रही रहेका रहेको राखे राख्छ राम्रो रूप लगभग लाई लागि ले वरिपरि वास्तवमा
वाहेक विरुद्ध विशेष शायद सँग सँगै सक्छ सट्टा सधैं सबै सबैलाई समय सम्भव सम्म
सही साँच्चै सात साथै सायद सारा सो सोध्नुभयो सोही स्पष्ट हरे हरेक हामी
हामीलाई हाम्रो हुँ हुन हुने हुनेछ हुन् हुन्छ हो होइन होइनन् होला होस् छिन्
छन हुनुहुन्छ गरेका गरिएको गरिएका भइरहेको भयो भएका हुन्थ्यो थिइन् हामीले
तपाईंको तपाईंले उनीहरू उनीहरूको उनीहरूले उसको उसले त्यस त्यसको यसले कसको
कसलाई कसले कुन कहाँ कहिले किनकि त्यसो
"""


def load_table():
    table = {}
    for line in (ROOT / "data" / "devanagari.tsv").read_text(encoding="utf-8").splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        hex_cp, value = line.split("\t", 1)
        table[int(hex_cp, 16)] = value
    return table


def is_consonant(cp):
    return 0x0915 <= cp <= 0x0939 or 0x0958 <= cp <= 0x095F or 0x0978 <= cp <= 0x097F


def is_vowel_sign(cp):
    return (0x093A <= cp <= 0x093B or 0x093E <= cp <= 0x094C or 0x094E <= cp <= 0x094F
            or 0x0955 <= cp <= 0x0957 or 0x0962 <= cp <= 0x0963)


def continues_word(cp):
    return 0x0900 <= cp <= 0x097F and not 0x0964 <= cp <= 0x0970


def romanize(word, table):
    cps = [ord(c) for c in word]
    out = []
    for i, cp in enumerate(cps):
        out.append(table.get(cp, ""))
        if is_consonant(cp):
            nxt = 0
            for later in cps[i + 1:]:
                if later not in (0x093C, 0x200C, 0x200D):
                    nxt = later
                    break
            if continues_word(nxt) and not is_vowel_sign(nxt) and nxt != 0x094D:
                out.append("a")
    return "".join(out)


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


def write(name, header, source, table):
    words = sorted({romanize(w, table) for w in source.split()} - {""})
    path = ROOT / "data" / name
    with path.open("w", encoding="utf-8") as f:
        f.write(LICENSE)
        f.write("# %s (romanized with data/devanagari.tsv).\n" % header)
        f.write("# Generated by tools/gen_stopwords.py.\n")
        for w in words:
            f.write(w + "\n")
    print(name, len(words))


def main():
    table = load_table()
    write("stopwords_hi.txt", "Hindi stopwords", HINDI, table)
    write("stopwords_ne.txt", "Nepali stopwords", NEPALI, table)


if __name__ == "__main__":
    main()
