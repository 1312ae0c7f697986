#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "gecforge/areta.hpp"

using namespace gecforge;

namespace {

TagSet tags_of(const std::string& codes) {
  TagSet out;
  std::stringstream ss(codes);
  std::string c;
  while (std::getline(ss, c, ','))
    if (!c.empty()) out.insert(parse_tag(c));
  return out;
}

TagSet word_tags(const std::string& raw, const std::string& ref) {
  EditOp op{EditKind::Replace, {0, 1}, {0, 1}, 0.0};
  TokenList a{raw}, b{ref};
  return classify_edit(op, a, b).tags;
}

struct FixtureRow {
  std::string raw, ref;
  TagSet expected;
  std::size_t unknown;
};

std::vector<FixtureRow> load_fixture() {
  std::ifstream in(GECFORGE_FIXTURES "/annotate_20.tsv");
  REQUIRE(in);
  std::vector<FixtureRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, '\t')) cols.push_back(col);
    if (cols.size() == 3) cols.insert(cols.begin() + 2, "");
    REQUIRE(cols.size() == 4);
    rows.push_back({cols[0], cols[1], tags_of(cols[2]), std::stoul(cols[3])});
  }
  return rows;
}

}  // namespace

TEST_CASE("word replacements follow the orthographic cascade", "[areta]") {
  CHECK(word_tags("احمد", "أحمد") == TagSet{ErrorTag::OH});
  CHECK(word_tags("علي", "على") == TagSet{ErrorTag::OA});
  CHECK(word_tags("مدرسه", "مدرسة") == TagSet{ErrorTag::OT});
  CHECK(word_tags("مدرست", "مدرسة") == TagSet{ErrorTag::OT});
  CHECK(word_tags("ذهبو", "ذهبوا") == TagSet{ErrorTag::OW});
  CHECK(word_tags("ذهبوا", "ذهبو") == TagSet{ErrorTag::OW});
  CHECK(word_tags("كتابا", "كتابًا") == TagSet{ErrorTag::ON});
  CHECK(word_tags("كتابن", "كتابً") == TagSet{ErrorTag::ON});
  CHECK(word_tags("كبرية", "كبيرة") == TagSet{ErrorTag::OC});
  CHECK(word_tags("ذهبب", "ذهب") == TagSet{ErrorTag::OD});
  CHECK(word_tags("الود", "الولد") == TagSet{ErrorTag::OM});
  CHECK(word_tags("الولاد", "الولد") == TagSet{ErrorTag::OG});
  CHECK(word_tags("قل", "قال") == TagSet{ErrorTag::OS});
  CHECK(word_tags("الطالث", "الطالب") == TagSet{ErrorTag::OR});
  CHECK(word_tags("البنت", "الولد") == TagSet{ErrorTag::SW});
}

TEST_CASE("independent script segments yield several tags", "[areta]") {
  CHECK(word_tags("الي", "إلى") == TagSet{ErrorTag::OH, ErrorTag::OA});
}

TEST_CASE("structural edits map to their categories", "[areta]") {
  auto tags = [](const std::string& raw, const std::string& ref) {
    return annotate(Sentence(raw), Sentence(ref)).sentence_tags;
  };
  CHECK(tags("عبد الله", "عبدالله") == TagSet{ErrorTag::MG});
  CHECK(tags("ذهبالولد", "ذهب الولد") == TagSet{ErrorTag::SP});
  CHECK(tags("ذهب الولد", "ذهب الولد .") == TagSet{ErrorTag::PM});
  CHECK(tags("ذهب الولد . .", "ذهب الولد .") == TagSet{ErrorTag::PT});
  CHECK(tags("ذهب الولد .", "ذهب الولد ؟") == TagSet{ErrorTag::PC});
  CHECK(tags("ذهب المدرسة", "ذهب إلى المدرسة") == TagSet{ErrorTag::XM});
  CHECK(tags("ذهب ذهب الولد", "ذهب الولد") == TagSet{ErrorTag::XT});
}

TEST_CASE("identical sentences carry no tags", "[areta]") {
  for (std::string s : {"ذهب الولد إلى المدرسة .", "", "نص"}) {
    AnnotatedPair a = annotate(Sentence(s), Sentence(s));
    CHECK(a.sentence_tags.empty());
    CHECK(a.unknown_count == 0);
    for (const auto& t : a.edit_tags) CHECK(t.empty());
  }
}

TEST_CASE("edits without a rule are counted as unknown", "[areta]") {
  AnnotatedPair a = annotate(Sentence("العدد 5 كبير"), Sentence("العدد 6 كبير"));
  CHECK(a.sentence_tags.empty());
  CHECK(a.unknown_count == 1);
}

TEST_CASE("sentence tags are the union of edit tags", "[areta]") {
  AnnotatedPair a = annotate(Sentence("عبد الله ذهب الي المدرسه"), Sentence("عبدالله ذهب إلى المدرسة"));
  TagSet u;
  for (std::size_t i = 0; i < a.alignment.ops.size(); ++i) {
    if (a.alignment.ops[i].kind == EditKind::Keep) CHECK(a.edit_tags[i].empty());
    u |= a.edit_tags[i];
  }
  CHECK(u == a.sentence_tags);
  CHECK(a.sentence_tags == TagSet{ErrorTag::MG, ErrorTag::OH, ErrorTag::OA, ErrorTag::OT});
}

TEST_CASE("rule table lookups take precedence over character rules", "[areta]") {
  std::istringstream tsv(
      "# raw\tref\ttag\n"
      "كتبت\tكتب\tXG\n"
      "يكتب\tكتب\tMT\n");
  RuleTable rules = RuleTable::parse(tsv);
  CHECK(rules.rules().size() == 2);
  AnnotatedPair a = annotate(Sentence("الولد كتبت الدرس"), Sentence("الولد كتب الدرس"), rules);
  CHECK(a.sentence_tags == TagSet{ErrorTag::XG});
  AnnotatedPair b = annotate(Sentence("الولد كتبت الدرس"), Sentence("الولد كتب الدرس"));
  CHECK(b.sentence_tags == TagSet{ErrorTag::OD});
}

TEST_CASE("malformed rule tables are rejected", "[areta]") {
  std::istringstream two_cols("كتبت\tكتب\n");
  CHECK_THROWS_AS(RuleTable::parse(two_cols), MalformedInput);
  std::istringstream bad_tag("كتبت\tكتب\tQQ\n");
  CHECK_THROWS_AS(RuleTable::parse(bad_tag), UnknownTag);
  CHECK_THROWS_AS(RuleTable::load("/nonexistent/rules.tsv"), IoError);
}

TEST_CASE("annotated fixture matches hand annotation", "[areta][fixture]") {
  auto rows = load_fixture();
  REQUIRE(rows.size() == 20);
  std::vector<std::pair<Sentence, Sentence>> pairs;
  std::array<std::size_t, kTagCount> expected_freq{};
  std::size_t expected_unknown = 0;
  for (const auto& r : rows) {
    INFO(r.raw << " -> " << r.ref);
    AnnotatedPair a = annotate(Sentence(r.raw), Sentence(r.ref));
    CHECK(a.sentence_tags.codes() == r.expected.codes());
    CHECK(a.unknown_count == r.unknown);
    pairs.emplace_back(Sentence(r.raw), Sentence(r.ref));
    for (std::size_t t = 0; t < kTagCount; ++t) expected_freq[t] += r.expected.test(t);
    expected_unknown += r.unknown;
  }
  for (std::size_t threads : {1, 4}) {
    CorpusAnnotation c = annotate_corpus(pairs, {}, threads);
    REQUIRE(c.rows.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(c.rows[i] == rows[i].expected);
    CHECK(c.frequency == expected_freq);
    CHECK(c.unknown_edits == expected_unknown);
  }
}

TEST_CASE("corpus annotation edge cases", "[areta]") {
  CorpusAnnotation empty = annotate_corpus({}, {}, 4);
  CHECK(empty.rows.empty());
  for (auto f : empty.frequency) CHECK(f == 0);
  CHECK(empty.unknown_rate() == 0.0);

  std::vector<std::pair<Sentence, Sentence>> three(3, {Sentence("احمد هنا"), Sentence("أحمد هنا")});
  CorpusAnnotation c = annotate_corpus(three);
  CHECK(c.frequency[index_of(ErrorTag::OH)] == 3);
  std::size_t total = 0;
  for (auto f : c.frequency) total += f;
  CHECK(total == 3);
}
