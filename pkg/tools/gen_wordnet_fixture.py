#!/usr/bin/env python3
"""Regenerate the bundled WordNet-3.0-format lexicon subset.

Emits index.{noun,verb,adj} and data.{noun,verb,adj} under
src/posedit/data/wordnet/ in the standard WNdb-3.0 grammar: byte-offset
synset ids, hex word counts, lemma-level antonym pointers, satellite
adjectives, verb frame sections. A full WNdb-3.0 directory is a drop-in
replacement for this subset.

Relation content mirrors WordNet 3.0 for everything the test suite
asserts (young/old and crowded/uncrowded antonyms, dog -> canine,
dog's hyponym list starting at basenji, pavement -> paved_surface,
pavement's hyponym curbside, big/little and large/small antonym pairs).
Upper chains are trimmed where the full hierarchy adds nothing to tests.
Hyponym pointers are written sorted by the child's first lemma, the
presentation order standard tooling shows.
"""
from __future__ import annotations

from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "posedit" / "data" / "wordnet"

# (key, lexfile, [lemmas], [hypernym keys])
NOUNS = [
    ("entity", 3, ["entity"], []),
    ("physical_entity", 3, ["physical_entity"], ["entity"]),
    ("abstraction", 3, ["abstraction", "abstract_entity"], ["entity"]),
    ("object", 3, ["object", "physical_object"], ["physical_entity"]),
    ("whole", 3, ["whole", "unit"], ["object"]),
    ("thing", 3, ["thing"], ["physical_entity"]),
    ("causal_agent", 3, ["causal_agent", "cause", "causal_agency"], ["physical_entity"]),
    ("part", 9, ["part", "piece"], ["thing"]),
    ("living_thing", 3, ["living_thing", "animate_thing"], ["whole"]),
    ("organism", 3, ["organism", "being"], ["living_thing"]),
    ("natural_object", 17, ["natural_object"], ["whole"]),
    ("artifact", 6, ["artifact", "artefact"], ["whole"]),
    # animals
    ("animal", 5, ["animal", "animate_being", "beast", "brute", "creature", "fauna"], ["organism"]),
    ("chordate", 5, ["chordate"], ["animal"]),
    ("vertebrate", 5, ["vertebrate", "craniate"], ["chordate"]),
    ("mammal", 5, ["mammal", "mammalian"], ["vertebrate"]),
    ("placental", 5, ["placental", "placental_mammal", "eutherian", "eutherian_mammal"], ["mammal"]),
    ("carnivore", 5, ["carnivore"], ["placental"]),
    ("canine", 5, ["canine", "canid"], ["carnivore"]),
    ("feline", 5, ["feline", "felid"], ["carnivore"]),
    ("domestic_animal", 5, ["domestic_animal", "domesticated_animal"], ["animal"]),
    ("dog", 5, ["dog", "domestic_dog", "canis_familiaris"], ["canine", "domestic_animal"]),
    ("basenji", 5, ["basenji"], ["dog"]),
    ("corgi", 5, ["corgi", "welsh_corgi"], ["dog"]),
    ("cur", 5, ["cur", "mongrel", "mutt"], ["dog"]),
    ("dalmatian", 5, ["dalmatian", "coach_dog", "carriage_dog"], ["dog"]),
    ("pooch", 5, ["pooch", "doggie", "doggy", "barker", "bow-wow"], ["dog"]),
    ("poodle", 5, ["poodle", "poodle_dog"], ["dog"]),
    ("pug", 5, ["pug", "pug-dog"], ["dog"]),
    ("puppy", 5, ["puppy"], ["dog"]),
    ("cat", 5, ["cat", "true_cat"], ["feline"]),
    ("young_mammal", 5, ["young_mammal"], ["mammal"]),
    ("kitten", 5, ["kitten", "kitty"], ["young_mammal"]),
    ("bird", 5, ["bird"], ["vertebrate"]),
    ("equine", 5, ["equine", "equid"], ["placental"]),
    ("horse", 5, ["horse", "equus_caballus"], ["equine"]),
    # people
    ("person", 18, ["person", "individual", "someone", "somebody", "mortal", "soul"], ["organism", "causal_agent"]),
    ("adult", 18, ["adult", "grownup"], ["person"]),
    ("male", 18, ["male", "male_person"], ["person"]),
    ("female", 18, ["female", "female_person"], ["person"]),
    ("juvenile", 18, ["juvenile", "juvenile_person"], ["person"]),
    ("child", 18, ["child", "kid", "youngster"], ["juvenile"]),
    ("teenager", 18, ["teenager", "stripling", "teen", "adolescent"], ["juvenile"]),
    ("man", 18, ["man", "adult_male"], ["adult", "male"]),
    ("woman", 18, ["woman", "adult_female"], ["adult", "female"]),
    ("boy", 18, ["male_child", "boy"], ["male", "child"]),
    ("girl", 18, ["girl", "miss", "missy", "young_lady", "young_woman"], ["woman"]),
    ("group", 3, ["group", "grouping"], ["abstraction"]),
    ("people", 14, ["people"], ["group"]),
    ("arrangement", 14, ["arrangement"], ["group"]),
    ("array", 14, ["array"], ["arrangement"]),
    # attributes / colors
    ("attribute", 7, ["attribute"], ["abstraction"]),
    ("property", 7, ["property"], ["attribute"]),
    ("visual_property", 7, ["visual_property"], ["property"]),
    ("color_n", 7, ["color", "colour", "coloring", "colouring"], ["visual_property"]),
    ("chromatic_color", 7, ["chromatic_color", "chromatic_colour", "spectral_color", "spectral_colour"], ["color_n"]),
    ("achromatic_color", 7, ["achromatic_color", "achromatic_colour"], ["color_n"]),
    ("black_n", 7, ["black", "blackness", "inkiness"], ["achromatic_color"]),
    ("white_n", 7, ["white", "whiteness"], ["achromatic_color"]),
    ("red_n", 7, ["red", "redness"], ["chromatic_color"]),
    ("green_n", 7, ["green", "greenness", "viridity"], ["chromatic_color"]),
    ("blue_n", 7, ["blue", "blueness"], ["chromatic_color"]),
    ("brown_n", 7, ["brown", "brownness"], ["chromatic_color"]),
    ("orange_n", 7, ["orange", "orangeness"], ["chromatic_color"]),
    ("pink_n", 7, ["pink"], ["chromatic_color"]),
    ("purple_n", 7, ["purple", "purpleness"], ["chromatic_color"]),
    ("tan_n", 7, ["tan"], ["brown_n"]),
    # body
    ("body_part", 8, ["body_part"], ["part"]),
    ("organ", 8, ["organ"], ["body_part"]),
    ("sense_organ", 8, ["sense_organ", "sensory_receptor", "receptor"], ["organ"]),
    ("ear", 8, ["ear"], ["sense_organ"]),
    # substances / food
    ("matter", 3, ["matter"], ["physical_entity"]),
    ("substance", 27, ["substance"], ["matter"]),
    ("material", 27, ["material", "stuff"], ["substance"]),
    ("glass_material", 27, ["glass"], ["material"]),
    ("fluid", 27, ["fluid"], ["substance"]),
    ("liquid", 27, ["liquid"], ["fluid"]),
    ("water", 27, ["water", "h2o"], ["liquid"]),
    ("food", 13, ["food", "nutrient"], ["substance"]),
    ("milk", 13, ["milk"], ["food"]),
    # artifacts
    ("instrumentality", 6, ["instrumentality", "instrumentation"], ["artifact"]),
    ("container", 6, ["container"], ["instrumentality"]),
    ("vessel", 6, ["vessel"], ["container"]),
    ("glass_container", 6, ["glass", "drinking_glass"], ["container"]),
    ("bowl", 6, ["bowl"], ["vessel"]),
    ("device", 6, ["device"], ["instrumentality"]),
    ("instrument", 6, ["instrument"], ["device"]),
    ("optical_instrument", 6, ["optical_instrument"], ["instrument"]),
    ("glasses", 6, ["glasses", "spectacles", "specs", "eyeglasses"], ["optical_instrument"]),
    ("implement", 6, ["implement"], ["instrumentality"]),
    ("stick", 6, ["stick"], ["implement"]),
    ("club", 6, ["club"], ["stick"]),
    ("bat_animal", 5, ["bat", "chiropteran"], ["placental"]),
    ("bat_club", 6, ["bat"], ["club"]),
    ("equipment", 6, ["equipment"], ["instrumentality"]),
    ("game_equipment", 6, ["game_equipment"], ["equipment"]),
    ("ball", 6, ["ball"], ["game_equipment"]),
    ("baseball", 6, ["baseball"], ["ball"]),
    ("commodity", 6, ["commodity", "trade_good", "good"], ["artifact"]),
    ("consumer_goods", 6, ["consumer_goods"], ["commodity"]),
    ("clothing", 6, ["clothing", "article_of_clothing", "vesture", "wear", "wearable", "habiliment"], ["consumer_goods"]),
    ("garment", 6, ["garment"], ["clothing"]),
    ("womans_clothing", 6, ["woman's_clothing"], ["clothing"]),
    ("dress_n", 6, ["dress", "frock"], ["womans_clothing"]),
    ("shirt", 6, ["shirt"], ["garment"]),
    ("coat", 6, ["coat"], ["garment"]),
    ("jacket", 6, ["jacket"], ["coat"]),
    ("headdress", 6, ["headdress", "headgear"], ["clothing"]),
    ("hat", 6, ["hat", "chapeau", "lid"], ["headdress"]),
    ("helmet", 6, ["helmet"], ["headdress"]),
    ("swimsuit", 6, ["swimsuit", "swimwear", "bathing_suit", "swimming_costume", "bathing_costume"], ["garment"]),
    ("bikini", 6, ["bikini", "two-piece"], ["swimsuit"]),
    ("furnishing", 6, ["furnishing"], ["instrumentality"]),
    ("furniture", 6, ["furniture", "piece_of_furniture", "article_of_furniture"], ["furnishing"]),
    ("seat", 6, ["seat"], ["furniture"]),
    ("bench", 6, ["bench"], ["seat"]),
    ("table_array", 14, ["table", "tabular_array"], ["array"]),
    ("table_furniture", 6, ["table"], ["furniture"]),
    ("plaything", 6, ["plaything", "toy"], ["artifact"]),
    ("structure", 6, ["structure", "construction"], ["artifact"]),
    ("building", 6, ["building", "edifice"], ["structure"]),
    ("house", 6, ["house"], ["building"]),
    ("cabin", 6, ["cabin"], ["house"]),
    ("barrier", 6, ["barrier"], ["structure"]),
    ("rail", 6, ["rail", "railing"], ["barrier"]),
    ("way", 6, ["way"], ["artifact"]),
    ("road", 6, ["road", "route"], ["way"]),
    ("thoroughfare", 6, ["thoroughfare"], ["road"]),
    ("street", 6, ["street"], ["thoroughfare"]),
    ("conveyance", 6, ["conveyance", "transport"], ["instrumentality"]),
    ("vehicle", 6, ["vehicle"], ["conveyance"]),
    ("motor_vehicle", 6, ["motor_vehicle", "automotive_vehicle"], ["vehicle"]),
    ("car", 6, ["car", "auto", "automobile", "machine", "motorcar"], ["motor_vehicle"]),
    # surfaces
    ("surface", 6, ["surface"], ["part"]),
    ("horizontal_surface", 6, ["horizontal_surface", "level"], ["surface"]),
    ("paved_surface", 6, ["paved_surface"], ["horizontal_surface"]),
    ("pavement", 6, ["pavement", "paving"], ["paved_surface"]),
    ("curbside", 6, ["curbside"], ["pavement"]),
    ("sidewalk", 6, ["sidewalk", "pavement"], ["paved_surface"]),
    # nature
    ("geological_formation", 17, ["geological_formation", "formation"], ["natural_object"]),
    ("shore", 17, ["shore"], ["geological_formation"]),
    ("beach", 17, ["beach"], ["shore"]),
    ("natural_elevation", 17, ["natural_elevation", "elevation"], ["geological_formation"]),
    ("mountain", 17, ["mountain", "mount"], ["natural_elevation"]),
    ("location", 15, ["location"], ["object"]),
    ("region", 15, ["region"], ["location"]),
    ("geographical_area", 15, ["geographical_area", "geographic_area"], ["region"]),
    ("tract", 15, ["tract", "piece_of_land", "piece_of_ground", "parcel_of_land", "parcel"], ["geographical_area"]),
    ("park", 15, ["park", "commons", "common", "green"], ["tract"]),
    ("field", 15, ["field"], ["tract"]),
    ("plant", 20, ["plant", "flora", "plant_life"], ["organism"]),
    ("vascular_plant", 20, ["vascular_plant", "tracheophyte"], ["plant"]),
    ("herb", 20, ["herb", "herbaceous_plant"], ["vascular_plant"]),
    ("grass", 20, ["grass"], ["herb"]),
    ("woody_plant", 20, ["woody_plant", "ligneous_plant"], ["vascular_plant"]),
    ("tree", 20, ["tree"], ["woody_plant"]),
    ("flamboyant_n", 20, ["flamboyant", "royal_poinciana", "flame_tree"], ["tree"]),
]

# (key, lexfile, [lemmas], [hypernym keys], [(src_lemma, tgt_key, tgt_lemma)])
VERBS = [
    ("travel", 38, ["travel", "go", "move", "locomote"], [], []),
    ("walk", 38, ["walk"], ["travel"], [("walk", "ride", "ride")]),
    ("ride", 38, ["ride"], ["travel"], [("ride", "walk", "walk")]),
    ("swim", 38, ["swim"], ["travel"], []),
    ("approach", 38, ["approach", "near", "come_near"], ["travel"], []),
    ("travel_rapidly", 38, ["travel_rapidly", "speed", "hurry", "zip"], ["travel"], []),
    ("run", 38, ["run"], ["travel_rapidly"], []),
    ("move_something", 38, ["move", "displace"], [], []),
    ("swing", 38, ["swing", "sway"], ["move_something"], []),
    ("carry", 38, ["carry", "transport"], ["move_something"], []),
    ("jump", 38, ["jump", "leap", "bound", "spring"], ["move_something"], []),
    ("drive", 38, ["drive"], ["move_something"], []),
    ("wear", 29, ["wear", "have_on"], [], []),
    ("dress_v", 29, ["dress", "get_dressed"], [], [("dress", "undress_v", "undress")]),
    ("undress_v", 29, ["undress", "strip", "unclothe"], [], [("undress", "dress_v", "dress")]),
    ("sit", 35, ["sit", "sit_down"], [], [("sit", "stand", "stand")]),
    ("stand", 35, ["stand", "stand_up"], [], [("stand", "sit", "sit")]),
    ("open_v", 35, ["open", "open_up"], [], [("open", "close_v", "close")]),
    ("close_v", 35, ["close", "shut"], [], [("close", "open_v", "open")]),
    ("pierce", 35, ["pierce"], [], []),
    ("feather_v", 35, ["feather"], [], []),
    ("wait", 42, ["wait"], [], []),
    ("catch", 35, ["catch", "grab"], [], []),
    ("hold", 35, ["hold", "take_hold"], [], []),
    ("play", 35, ["play"], [], []),
    ("look", 39, ["look"], [], []),
    ("watch", 39, ["watch", "view", "see"], ["look"], []),
    ("consume", 34, ["consume", "ingest", "take_in", "have"], [], []),
    ("eat", 34, ["eat"], ["consume"], []),
    ("drink", 34, ["drink", "imbibe"], ["consume"], []),
]

# (key, ss_type, [lemmas], [(src_lemma, tgt_key, tgt_lemma)], [similar-to keys])
ADJS = [
    ("young_a", "a", ["young", "immature"], [("young", "old_a", "old")], []),
    ("old_a", "a", ["old"], [("old", "young_a", "young")], []),
    ("crowded_a", "a", ["crowded"], [("crowded", "uncrowded_a", "uncrowded")], []),
    ("uncrowded_a", "a", ["uncrowded"], [("uncrowded", "crowded_a", "crowded")], []),
    ("large_a", "a", ["large", "big"],
     [("large", "small_a", "small"), ("big", "small_a", "little")], ["enormous_a", "huge_a"]),
    ("small_a", "a", ["small", "little"],
     [("small", "large_a", "large"), ("little", "large_a", "big")], ["tiny_a", "minor_a"]),
    ("enormous_a", "s", ["enormous"], [], ["large_a"]),
    ("huge_a", "s", ["huge", "immense", "vast"], [], ["large_a"]),
    ("tiny_a", "s", ["tiny", "bantam", "diminutive"], [], ["small_a"]),
    ("minor_a", "s", ["minor", "modest", "small-scale"], [], ["small_a"]),
    ("wet_a", "a", ["wet"], [("wet", "dry_a", "dry")], []),
    ("dry_a", "a", ["dry"], [("dry", "wet_a", "wet")], []),
    ("tall_a", "a", ["tall"], [("tall", "short_a", "short")], []),
    ("short_a", "a", ["short"], [("short", "tall_a", "tall")], []),
    ("wooden_a", "a", ["wooden"], [], []),
    ("other_a", "a", ["other"], [], []),
    ("several_a", "a", ["several"], [], []),
    ("flamboyant_a", "a", ["flamboyant", "showy", "splashy"], [], []),
    ("black_a", "a", ["black"], [], []),
    ("white_a", "a", ["white"], [], []),
    ("red_a", "a", ["red"], [], []),
    ("green_a", "a", ["green"], [], []),
    ("blue_a", "a", ["blue"], [], []),
    ("brown_a", "a", ["brown"], [], []),
    ("orange_a", "a", ["orange"], [], []),
    ("pink_a", "a", ["pink"], [], []),
    ("purple_a", "a", ["purple"], [], []),
    ("tan_a", "a", ["tan"], [], []),
]

HEADER = (
    "  1 This file is a generated WordNet-3.0-format lexicon subset for posedit.\n"
    "  2 See tools/gen_wordnet_fixture.py; a full WNdb-3.0 directory is a drop-in replacement.\n"
)


def build_pos(entries, pos_letter: str, data_name: str):
    """Return (data_text, index_text) for one part of speech."""

    def hypernyms_of(e):
        return [] if data_name == "adj" else e[3]

    def antonyms_of(e):
        if data_name == "noun":
            return []
        return e[4] if data_name == "verb" else e[3]

    def similar_of(e):
        return e[4] if data_name == "adj" else []

    def lexfile_of(e):
        return 0 if data_name == "adj" else e[1]

    def ss_type_of(e):
        return e[1] if data_name == "adj" else pos_letter

    def gloss_of(e):
        return e[2][0].replace("_", " ")

    keys = [e[0] for e in entries]
    lemmas_of = {e[0]: e[2] for e in entries}

    children: dict[str, list[str]] = {k: [] for k in keys}
    for e in entries:
        for hyper in hypernyms_of(e):
            children[hyper].append(e[0])
    for k in children:
        children[k].sort(key=lambda ck: lemmas_of[ck][0])

    def compose(offsets):
        lines = []
        for e in entries:
            key, lemmas = e[0], e[2]
            ptrs = []
            for hyper in hypernyms_of(e):
                ptrs.append(("@", offsets[hyper], pos_letter, 0, 0))
            for cld in children[key]:
                ptrs.append(("~", offsets[cld], pos_letter, 0, 0))
            for src, tgt_key, tgt_lemma in antonyms_of(e):
                s_num = lemmas.index(src) + 1
                t_num = lemmas_of[tgt_key].index(tgt_lemma) + 1
                ptrs.append(("!", offsets[tgt_key], pos_letter, s_num, t_num))
            for sim in similar_of(e):
                ptrs.append(("&", offsets[sim], pos_letter, 0, 0))
            words = " ".join(f"{w} 0" for w in lemmas)
            ptr_txt = " ".join(
                f"{sym} {off:08d} {p} {src:02x}{tgt:02x}" for sym, off, p, src, tgt in ptrs
            )
            body = (
                f"{offsets[key]:08d} {lexfile_of(e):02d} {ss_type_of(e)} "
                f"{len(lemmas):02x} {words} {len(ptrs):03d}"
            )
            if ptr_txt:
                body += " " + ptr_txt
            if pos_letter == "v":
                body += " 01 + 02 00"
            body += f" | {gloss_of(e)}  \n"
            lines.append(body)
        return lines

    # offset fields are fixed 8-digit, so byte positions computed against
    # dummy offsets survive the second pass unchanged
    dummy = {k: 0 for k in keys}
    lines = compose(dummy)
    offsets = {}
    byte_pos = len(HEADER.encode())
    for key, line in zip(keys, lines):
        offsets[key] = byte_pos
        byte_pos += len(line.encode())
    lines = compose(offsets)

    index: dict[str, list[str]] = {}
    symbols: dict[str, set] = {}
    for e in entries:
        ptr_syms = set()
        if hypernyms_of(e):
            ptr_syms.add("@")
        if children[e[0]]:
            ptr_syms.add("~")
        if antonyms_of(e):
            ptr_syms.add("!")
        if similar_of(e):
            ptr_syms.add("&")
        for lemma in e[2]:
            lw = lemma.lower()
            index.setdefault(lw, []).append(e[0])
            symbols.setdefault(lw, set()).update(ptr_syms)

    ipos = "a" if data_name == "adj" else pos_letter
    index_lines = []
    for lemma in sorted(index):
        offs = [offsets[k] for k in index[lemma]]
        syms = sorted(symbols[lemma])
        n = len(offs)
        line = f"{lemma} {ipos} {n} {len(syms)}"
        if syms:
            line += " " + " ".join(syms)
        line += f" {n} 0 " + " ".join(f"{o:08d}" for o in offs)
        index_lines.append(line + "  \n")

    return HEADER + "".join(lines), HEADER + "".join(index_lines)


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    for entries, letter, name in ((NOUNS, "n", "noun"), (VERBS, "v", "verb"), (ADJS, "a", "adj")):
        data_txt, index_txt = build_pos(entries, letter, name)
        (OUT / f"data.{name}").write_text(data_txt)
        (OUT / f"index.{name}").write_text(index_txt)
        print(f"wrote {name}: {len(entries)} synsets")


if __name__ == "__main__":
    main()
