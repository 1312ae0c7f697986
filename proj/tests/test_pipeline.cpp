#include <catch_amalgamated.hpp>

#include <fstream>
#include <random>
#include <sstream>

#include "gecforge/pipeline.hpp"

using namespace gecforge;

namespace {

const std::string kFixtures = GECFORGE_FIXTURES;

std::vector<Record> ingest_all(SourceKind kind, std::vector<std::string> paths, IngestStats* stats = nullptr) {
  std::vector<Record> out;
  IngestStats s = ingest({kind, std::move(paths)}, [&](Record r) { out.push_back(std::move(r)); });
  if (stats) *stats = s;
  return out;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string n_words(std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) out += (i ? " " : "") + std::string("كلمة");
  return out;
}

}  // namespace

TEST_CASE("xml ingestion keeps only text elements", "[pipeline][ingest]") {
  IngestStats stats;
  auto recs = ingest_all(SourceKind::XmlText, {kFixtures + "/corpus.xml"}, &stats);
  auto expected = read_lines(kFixtures + "/corpus.expected.txt");
  REQUIRE(recs.size() == expected.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    CHECK(recs[i].text == expected[i]);
    CHECK(recs[i].valid_utf8);
  }
  CHECK(stats.files == 1);
  CHECK(stats.records == 3);
  CHECK(stats.malformed_elements == 0);
}

TEST_CASE("malformed xml elements are skipped and counted", "[pipeline][ingest]") {
  IngestStats stats;
  auto recs = ingest_all(SourceKind::XmlText, {kFixtures + "/malformed.xml"}, &stats);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].text == "جملة صحيحة أولى");
  CHECK(recs[1].text == "جملة صحيحة ثانية");
  CHECK(stats.malformed_elements == 2);

  std::istringstream one_line("<text>أ</text><text>ب</text><texts>ج</texts><text\n>د</text>");
  std::vector<std::string> got;
  IngestStats s2;
  ingest_stream(one_line, SourceKind::XmlText, [&](Record r) { got.push_back(r.text); }, s2);
  CHECK(got == std::vector<std::string>{"أ", "ب", "د"});
  CHECK(s2.malformed_elements == 0);

  std::istringstream dangling("<text>أ</text>\n<text");
  got.clear();
  IngestStats s3;
  ingest_stream(dangling, SourceKind::XmlText, [&](Record r) { got.push_back(r.text); }, s3);
  CHECK(got == std::vector<std::string>{"أ"});
  CHECK(s3.malformed_elements == 1);
}

TEST_CASE("numbered lines lose their sequence number", "[pipeline][ingest]") {
  auto recs = ingest_all(SourceKind::Numbered, {kFixtures + "/numbered.txt"});
  std::vector<std::string> texts;
  for (const auto& r : recs) texts.push_back(r.text);
  CHECK(texts == std::vector<std::string>{"ذهب الولد إلى السوق", "كتب الطالب الدرس", "قرأ المعلم الكتاب",
                                          "سافر الأب إلى المدينة", "بلا رقم في البداية", "2020م عام جديد"});
  auto plain = ingest_all(SourceKind::Plain, {kFixtures + "/numbered.txt"});
  CHECK(plain[0].text == "17 ذهب الولد إلى السوق");
}

TEST_CASE("ingestion edge cases", "[pipeline][ingest]") {
  IngestStats stats;
  CHECK(ingest_all(SourceKind::Plain, {kFixtures + "/empty.txt"}, &stats).empty());
  CHECK(stats.records == 0);
  CHECK(stats.invalid_utf8 == 0);
  CHECK(ingest_all(SourceKind::XmlText, {kFixtures + "/empty.txt"}).empty());
  CHECK_THROWS_AS(ingest_all(SourceKind::Plain, {kFixtures + "/does-not-exist.txt"}), IoError);

  auto two = ingest_all(SourceKind::Numbered, {kFixtures + "/numbered.txt", kFixtures + "/numbered.txt"}, &stats);
  CHECK(two.size() == 12);
  CHECK(stats.files == 2);

  CHECK(parse_source_kind("xml") == SourceKind::XmlText);
  CHECK(parse_source_kind("numbered") == SourceKind::Numbered);
  CHECK(parse_source_kind("plain") == SourceKind::Plain);
  CHECK_THROWS_AS(parse_source_kind("json"), MalformedInput);
}

TEST_CASE("normalization examples", "[pipeline][normalize]") {
  CHECK(normalize("مرحبا!!!") == "مرحبا!");
  CHECK(normalize("كيف حالك ، اليوم") == "كيف حالك، اليوم");
  CHECK(normalize("كيف حالك ,اليوم") == "كيف حالك، اليوم");
  CHECK(normalize("هل أنت بخير ?") == "هل أنت بخير؟");
  CHECK(normalize("الرقم 3.5 و 1,000") == "الرقم 3.5 و 1,000");
  CHECK(normalize("ذهب   الولد  الي   السوق") == "ذهب الولد إلى السوق");
  CHECK(normalize("شكراً جزيلا") == "شكرًا جزيلا");
  CHECK(normalize("قال \"نعم\" (ثم) ذهب") == "قال \"نعم\" (ثم) ذهب");
  CHECK(normalize("") == "");
  NormalizeOptions only_spaces{false, false, false, false, true};
  CHECK(normalize("مرحبا!!!   يا  صديقي", only_spaces) == "مرحبا!!! يا صديقي");
}

TEST_CASE("normalization is idempotent", "[pipeline][normalize]") {
  std::mt19937_64 rng(3);
  const std::vector<std::string> pieces{"كتب", "الي", "فى", "!", "!!", "،", ",", "?", "؟", " ", "  ", ".", "3",
                                        "اً", "احمد", "\"", "(", ")", "؛", ";", ":", "x"};
  std::uniform_int_distribution<std::size_t> len(0, 16), pick(0, pieces.size() - 1);
  for (int trial = 0; trial < 2000; ++trial) {
    std::string s;
    for (std::size_t n = len(rng); n > 0; --n) s += pieces[pick(rng)];
    std::string once = normalize(s);
    INFO(s);
    CHECK(normalize(once) == once);
  }
  for (const auto& line : read_lines(kFixtures + "/arabic_200.txt")) CHECK(normalize(normalize(line)) == normalize(line));
}

TEST_CASE("spelling rules file and parser", "[pipeline][normalize]") {
  CHECK(slurp(GECFORGE_DATA "/spelling_rules.tsv") == std::string(kDefaultSpellingRules));
  SpellingRules loaded = SpellingRules::load(GECFORGE_DATA "/spelling_rules.tsv");
  CHECK(loaded.word == default_spelling_rules().word);
  CHECK(loaded.substring.size() == 1);

  std::istringstream custom("word\tكتاب\tالكتاب\nsubstring\tةة\tة\n");
  SpellingRules r = SpellingRules::parse(custom);
  CHECK(normalize("قرأ كتاب المدرسةة", {}, r) == "قرأ الكتاب المدرسة");
  std::istringstream bad_kind("letter\tا\tأ\n");
  CHECK_THROWS_AS(SpellingRules::parse(bad_kind), MalformedInput);
  std::istringstream bad_cols("word\tا\n");
  CHECK_THROWS_AS(SpellingRules::parse(bad_cols), MalformedInput);
  CHECK_THROWS_AS(SpellingRules::load("/nonexistent/rules.tsv"), IoError);
}

TEST_CASE("word count boundary", "[pipeline][filter]") {
  CleanConfig cfg;
  DropStats stats;
  CHECK_FALSE(clean_record({n_words(9) + " .", true}, cfg, stats).has_value());
  CHECK(stats.too_short == 1);
  CHECK(clean_record({n_words(10) + " .", true}, cfg, stats).has_value());
  CHECK(clean_record({n_words(400), true}, cfg, stats).has_value());
  CHECK_FALSE(clean_record({n_words(401), true}, cfg, stats).has_value());
  CHECK(stats.too_long == 1);
  CHECK(stats.kept == 2);
  CHECK(stats.lines_in == 4);

  cfg.min_words = 0;
  cfg.drop_empty = false;
  DropStats loose;
  CHECK(clean_record({"", true}, cfg, loose).value_or("x").empty());
  CHECK(loose.kept == 1);
}

TEST_CASE("links mentions and hashtags are stripped", "[pipeline][filter]") {
  CHECK(strip_links_mentions_hashtags("زوروا https://a.b/c @فلان #وسم www.x.com الموقع") == "زوروا الموقع");
  CHECK(strip_links_mentions_hashtags("") == "");
}

TEST_CASE("filter fixture matches its hand count", "[pipeline][filter][fixture]") {
  auto recs = ingest_all(SourceKind::Plain, {kFixtures + "/filter_100.txt"});
  REQUIRE(recs.size() == 100);
  DropStats stats;
  auto kept = clean_filter(recs, CleanConfig{}, stats);
  CHECK(stats.lines_in == 100);
  CHECK(stats.kept == 65);
  CHECK(stats.empty == 8);
  CHECK(stats.too_short == 12);
  CHECK(stats.too_long == 5);
  CHECK(stats.encoding == 10);
  CHECK(stats.lines_in == stats.kept + stats.dropped());
  CHECK(kept.size() == stats.kept);
  for (const auto& k : kept) {
    CHECK(k.find("!!") == std::string::npos);
    CHECK(utf8::is_valid(k));
  }
  auto j = stats.to_json();
  CHECK(j["dropped"] == 35);

  DropStats a, b;
  std::vector<Record> first(recs.begin(), recs.begin() + 37), second(recs.begin() + 37, recs.end());
  auto k1 = clean_filter(first, CleanConfig{}, a);
  auto k2 = clean_filter(second, CleanConfig{}, b);
  a += b;
  CHECK(a.to_json() == stats.to_json());
  k1.insert(k1.end(), k2.begin(), k2.end());
  CHECK(k1 == kept);
}

TEST_CASE("corpus statistics", "[pipeline][stats]") {
  std::vector<TagSet> zero(4);
  CorpusStats z = corpus_stats(zero);
  CHECK(z.sentences == 4);
  for (auto c : z.counts) CHECK(c == 0);

  std::vector<TagSet> rows{{ErrorTag::OH, ErrorTag::PM}, {ErrorTag::OH}, {}, {ErrorTag::SP, ErrorTag::OH}};
  CorpusStats s = corpus_stats(rows);
  CHECK(s.counts[index_of(ErrorTag::OH)] == 3);
  CHECK(s.counts[index_of(ErrorTag::PM)] == 1);
  CHECK(s.percentages[index_of(ErrorTag::OH)] == 75.0);
  std::uint64_t sum = 0, pop = 0;
  for (auto c : s.counts) sum += c;
  for (const auto& r : rows) pop += r.size();
  CHECK(sum == pop);
  REQUIRE(s.weights.weights.size() == kTagCount);
  CHECK(s.weights.weights[index_of(ErrorTag::OH)] < s.weights.weights[index_of(ErrorTag::PM)]);
  auto j = s.to_json();
  CHECK(j["tags"].size() == kTagCount);
  CHECK(j["tags"][4]["tag"] == "OH");
  CHECK(corpus_stats(std::vector<TagSet>{}).sentences == 0);
}
