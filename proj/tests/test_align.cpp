#include <catch_amalgamated.hpp>

#include <random>

#include "gecforge/align.hpp"
#include "oracles.hpp"

using namespace gecforge;
using Catch::Matchers::WithinAbs;

namespace {

TokenList random_tokens(std::mt19937_64& rng, std::size_t max_len) {
  static const std::vector<std::string> vocab = {"كتب", "كتاب", "ذهب", "وا", "ذهبوا", "عبد", "الله", "عبدالله",
                                                 "في", "الى", "إلى", ".", "،", "؟", "مدرسة", "مدرسه", "ب"};
  std::uniform_int_distribution<std::size_t> len(0, max_len), pick(0, vocab.size() - 1);
  TokenList out(len(rng));
  for (auto& t : out) t = vocab[pick(rng)];
  return out;
}

void check_partition(const Alignment& a, std::size_t n, std::size_t m) {
  std::size_t i = 0, j = 0;
  double sum = 0;
  for (const EditOp& op : a.ops) {
    CHECK(op.src.begin == i);
    CHECK(op.tgt.begin == j);
    i = op.src.end;
    j = op.tgt.end;
    sum += op.cost;
    switch (op.kind) {
      case EditKind::Keep:
        CHECK(op.cost == 0.0);
        [[fallthrough]];
      case EditKind::Replace: CHECK((op.src.size() == 1 && op.tgt.size() == 1)); break;
      case EditKind::Insert: CHECK((op.src.size() == 0 && op.tgt.size() == 1)); break;
      case EditKind::Delete: CHECK((op.src.size() == 1 && op.tgt.size() == 0)); break;
      case EditKind::Merge: CHECK((op.src.size() == 2 && op.tgt.size() == 1)); break;
      case EditKind::Split: CHECK((op.src.size() == 1 && op.tgt.size() == 2)); break;
    }
  }
  CHECK(i == n);
  CHECK(j == m);
  CHECK(sum == a.total_cost);
}

}  // namespace

TEST_CASE("identity alignment is all KEEP", "[align]") {
  TokenList s{"ذهب", "الولد"};
  Alignment a = align(s, s);
  REQUIRE(a.ops.size() == 2);
  CHECK(a.ops[0].kind == EditKind::Keep);
  CHECK(a.ops[1].kind == EditKind::Keep);
  CHECK(a.total_cost == 0.0);
}

TEST_CASE("merge and split are recognised", "[align]") {
  Alignment m = align(TokenList{"عبد", "الله"}, TokenList{"عبدالله"});
  REQUIRE(m.ops.size() == 1);
  CHECK(m.ops[0].kind == EditKind::Merge);
  CHECK(m.ops[0].src.begin == 0);
  CHECK(m.ops[0].src.end == 2);
  CHECK(m.ops[0].tgt.end == 1);

  Alignment s = align(TokenList{"ذهبوا"}, TokenList{"ذهب", "وا"});
  REQUIRE(s.ops.size() == 1);
  CHECK(s.ops[0].kind == EditKind::Split);
  CHECK(s.ops[0].tgt.end == 2);
}

TEST_CASE("empty inputs", "[align]") {
  CHECK(align(TokenList{}, TokenList{}).ops.empty());
  Alignment a = align(TokenList{}, TokenList{"نص", "."});
  REQUIRE(a.ops.size() == 2);
  CHECK(a.ops[0].kind == EditKind::Insert);
  CHECK(a.total_cost == 2.0);
  Alignment d = align(TokenList{"نص"}, TokenList{});
  REQUIRE(d.ops.size() == 1);
  CHECK(d.ops[0].kind == EditKind::Delete);
}

TEST_CASE("punctuation never replaces a word", "[align]") {
  Alignment a = align(TokenList{"نص", "."}, TokenList{"نص", "كلمة"});
  for (const auto& op : a.ops) CHECK(op.kind != EditKind::Replace);
}

TEST_CASE("alignment cost equals brute-force enumeration", "[align][oracle]") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 300; ++trial) {
    TokenList raw = random_tokens(rng, 5), ref = random_tokens(rng, 5);
    Alignment a = align(raw, ref);
    CHECK_THAT(a.total_cost, WithinAbs(oracle::brute_force_align_cost(raw, ref), 1e-9));
    check_partition(a, raw.size(), ref.size());
    CHECK(replay(a, raw, ref) == ref);
  }
}

TEST_CASE("alignment is deterministic", "[align]") {
  TokenList raw{"في", "في", "."}, ref{"في", "."};
  Alignment a = align(raw, ref), b = align(raw, ref);
  REQUIRE(a.ops.size() == b.ops.size());
  for (std::size_t i = 0; i < a.ops.size(); ++i) CHECK(a.ops[i].kind == b.ops[i].kind);
  // the lexicographically smallest optimal sequence keeps the first copy
  CHECK(a.ops[0].kind == EditKind::Keep);
  CHECK(a.ops[1].kind == EditKind::Delete);
}

TEST_CASE("char edit scripts", "[align]") {
  auto s = char_edit_script(std::string("احمد"), std::string("أحمد"));
  CHECK(s.distance() == 1);
  bool found = false;
  for (const auto& op : s.ops)
    if (op.kind == CharEdit::Sub) {
      CHECK(op.src_pos == 0);
      CHECK(op.from == U'ا');
      CHECK(op.to == U'أ');
      found = true;
    }
  CHECK(found);

  auto k = char_edit_script(std::string("كتاب"), std::string("كتاب"));
  CHECK(k.distance() == 0);
  CHECK(k.ops.size() == 4);

  auto i = char_edit_script(std::string("كتب"), std::string("كتاب"));
  REQUIRE(i.distance() == 1);
  for (const auto& op : i.ops)
    if (op.kind == CharEdit::Ins) {
      CHECK(op.tgt_pos == 2);
      CHECK(op.to == U'ا');
    }
}

TEST_CASE("char edit script length equals an independent Levenshtein", "[align][oracle]") {
  std::mt19937_64 rng(99);
  const std::u32string alphabet = U"ابتثةهىيأإء";
  std::uniform_int_distribution<std::size_t> len(0, 7), pick(0, alphabet.size() - 1);
  for (int trial = 0; trial < 2000; ++trial) {
    std::u32string a(len(rng), U' '), b(len(rng), U' ');
    for (auto& c : a) c = alphabet[pick(rng)];
    for (auto& c : b) c = alphabet[pick(rng)];
    auto script = char_edit_script(a, b);
    CHECK(script.distance() == oracle::lev(a, b));
    CHECK(levenshtein(a, b) == oracle::lev(a, b));
    CHECK(script.apply(a) == b);
  }
}
