// gecforge command-line front end.
//
// Exit codes: 0 success, 2 invalid input or arguments, 3 I/O failure,
// 4 adapter failure.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gecforge/gecforge.hpp"

namespace gf = gecforge;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitContract = 2;
constexpr int kExitIo = 3;
constexpr int kExitAdapter = 4;

std::vector<std::string> read_lines(const std::string& path) {
  std::vector<std::string> out;
  std::string line;
  if (path == "-") {
    while (std::getline(std::cin, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      out.push_back(line);
    }
    return out;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw gf::IoError("cannot open", path);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(line);
  }
  return out;
}

class Output {
 public:
  Output(const std::string& path, bool force) : path_(path) {
    if (path == "-") return;
    if (!force && std::ifstream(path).good()) throw gf::OutputExists(path);
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) throw gf::IoError("cannot open for writing", path);
  }
  std::ostream& stream() { return path_ == "-" ? std::cout : file_; }
  void close() {
    if (path_ == "-") {
      std::cout.flush();
      return;
    }
    file_.close();
    if (!file_) throw gf::IoError("write failed", path_);
  }

 private:
  std::string path_;
  std::ofstream file_;
};

gf::TagSet parse_tag_list(const std::string& list) {
  gf::TagSet out;
  std::stringstream ss(list);
  std::string code;
  while (std::getline(ss, code, ',')) {
    if (code.empty()) continue;
    out.insert(gf::parse_tag(code));
  }
  return out;
}

// A label line is a bracketed or bare 26-character mask, or a comma-separated
// tag list ("-" or empty for no tags).
gf::TagSet parse_label_line(std::string_view line) {
  if (line.size() == gf::kTagCount + 2 && line.front() == '[' && line.back() == ']')
    return gf::decode_mask(line.substr(1, gf::kTagCount));
  if (line.size() == gf::kTagCount && line.find_first_not_of("ab") == std::string_view::npos)
    return gf::decode_mask(line);
  if (line.empty() || line == "-") return {};
  return parse_tag_list(std::string(line));
}

gf::LabelMatrix read_labels(const std::string& path) {
  gf::LabelMatrix rows;
  std::size_t n = 0;
  for (const auto& line : read_lines(path)) {
    ++n;
    try {
      rows.push_back(parse_label_line(line));
    } catch (const gf::Error& e) {
      throw gf::MalformedInput(path + ":" + std::to_string(n) + ": " + e.what());
    }
  }
  return rows;
}

gf::ProbabilityMatrix read_probabilities(const std::string& path) {
  std::vector<gf::ProbabilityRow> rows;
  std::size_t n = 0;
  for (auto line : read_lines(path)) {
    ++n;
    for (char& c : line)
      if (c == ',' || c == '\t') c = ' ';
    std::istringstream ss(line);
    gf::ProbabilityRow row{};
    std::size_t k = 0;
    double v;
    while (ss >> v) {
      if (k == gf::kTagCount) throw gf::MalformedInput(path + ":" + std::to_string(n) + ": more than 26 values");
      row[k++] = v;
    }
    if (k != gf::kTagCount || !ss.eof())
      throw gf::MalformedInput(path + ":" + std::to_string(n) + ": expected 26 numeric values");
    rows.push_back(row);
  }
  return gf::ProbabilityMatrix(std::move(rows));
}

std::vector<std::pair<gf::Sentence, gf::Sentence>> read_pairs(const std::string& base, const std::string& format) {
  std::vector<std::pair<gf::Sentence, gf::Sentence>> out;
  for (auto& [a, b] : gf::read_parallel(base, gf::parse_corpus_format(format)))
    out.emplace_back(gf::Sentence(a), gf::Sentence(b));
  return out;
}

std::uint64_t resolve_seed(const CLI::Option* opt, std::uint64_t value) {
  if (opt->count() > 0) return value;
  if (const char* env = std::getenv("GECFORGE_SEED")) {
    try {
      std::size_t used = 0;
      std::uint64_t v = std::stoull(env, &used);
      if (used == std::string_view(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw gf::MalformedInput("GECFORGE_SEED is not an unsigned integer");
  }
  return 0;
}

json codes_json(const gf::TagSet& tags) {
  json out = json::array();
  for (gf::ErrorTag t : tags.members()) out.push_back(gf::code_of(t));
  return out;
}

json prf_json(const gf::Prf& p) {
  return {{"precision", p.precision}, {"recall", p.recall}, {"f1", p.f1}, {"f05", p.f05}};
}

json report_json(const gf::MetricsReport& r) {
  json labels = json::array();
  for (const auto& l : r.labels) {
    labels.push_back({{"tag", gf::code_of(l.tag)},
                      {"tp", l.counts.tp},
                      {"fp", l.counts.fp},
                      {"fn", l.counts.fn},
                      {"support", l.counts.support()},
                      {"precision", l.scores.precision},
                      {"recall", l.scores.recall},
                      {"f1", l.scores.f1},
                      {"f05", l.scores.f05},
                      {"f05_as_printed", l.f05_printed}});
  }
  return {{"sentences", r.sentences},
          {"micro", prf_json(r.micro)},
          {"macro", prf_json(r.macro)},
          {"weighted", prf_json(r.weighted)},
          {"micro_f05_as_printed", r.micro_f05_printed},
          {"hamming_loss", r.hamming_loss},
          {"labels", labels}};
}

json sweep_json(const gf::ThresholdSweepResult& s) {
  json curve = json::array();
  for (const auto& p : s.curve)
    curve.push_back({{"threshold", p.threshold}, {"precision", p.precision}, {"recall", p.recall}, {"f1", p.f1}});
  return {{"best_threshold", s.best_threshold}, {"best_f1", s.best_f1}, {"curve", curve}};
}

std::vector<std::string> split_command(const std::string& cmd) {
  std::vector<std::string> out;
  std::istringstream ss(cmd);
  std::string part;
  while (ss >> std::quoted(part)) out.push_back(part);
  return out;
}

void write_json(const json& j, const std::string& path, bool force) {
  Output out(path, force);
  out.stream() << j.dump(2) << '\n';
  out.close();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arabic grammatical error corpus toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "gecforge 0.1.0");
  std::size_t threads = gf::default_threads();
  app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  bool force = false;
  app.add_flag("--force", force, "Overwrite existing output files");

  // prepare ---------------------------------------------------------------
  auto* prepare = app.add_subcommand("prepare", "Ingest, normalize and filter monolingual text");
  std::vector<std::string> prep_inputs;
  std::string prep_kind = "plain", prep_out = "-", prep_stats, prep_spelling;
  gf::CleanConfig clean;
  bool keep_links = false, no_normalize = false;
  prepare->add_option("inputs", prep_inputs, "Input files")->required();
  prepare->add_option("--kind", prep_kind, "xml | numbered | plain");
  prepare->add_option("-o,--output", prep_out, "Cleaned sentences, one per line");
  prepare->add_option("--stats", prep_stats, "Write drop statistics JSON here");
  prepare->add_option("--min-words", clean.min_words);
  prepare->add_option("--max-words", clean.max_words);
  prepare->add_option("--spelling-rules", prep_spelling, "TSV of spelling repairs");
  prepare->add_flag("--keep-links", keep_links, "Keep URLs, mentions and hashtags");
  prepare->add_flag("--no-normalize", no_normalize);

  // annotate --------------------------------------------------------------
  auto* annotate = app.add_subcommand("annotate", "Tag (raw, reference) pairs");
  std::string ann_raw, ann_ref, ann_pairs, ann_format = "tsv", ann_rules, ann_out = "-", ann_stats;
  annotate->add_option("--raw", ann_raw, "Raw sentences, one per line");
  annotate->add_option("--ref", ann_ref, "Reference sentences, aligned with --raw");
  annotate->add_option("--pairs", ann_pairs, "Parallel corpus base path instead of --raw/--ref");
  annotate->add_option("--format", ann_format, "Format of --pairs: tsv | srctgt");
  annotate->add_option("--rules", ann_rules, "Word rule table TSV");
  annotate->add_option("-o,--out", ann_out, "One 26-character mask per pair");
  annotate->add_option("--stats", ann_stats, "Write tag statistics JSON here");

  // corrupt ---------------------------------------------------------------
  auto* corrupt = app.add_subcommand("corrupt", "Inject tagged errors into sentences");
  std::string cor_in = "-", cor_tags, cor_rules, cor_out = "-";
  std::uint64_t cor_seed = 0;
  bool cor_plan = false;
  corrupt->add_option("-i,--input", cor_in, "Sentences, one per line");
  corrupt->add_option("--tags", cor_tags, "Comma-separated tag codes")->required();
  auto* cor_seed_opt = corrupt->add_option("--seed", cor_seed);
  corrupt->add_option("--rules", cor_rules, "Word rule table TSV");
  corrupt->add_option("-o,--output", cor_out);
  corrupt->add_flag("--plan", cor_plan, "Emit JSON lines with the plan and report");

  // generate --------------------------------------------------------------
  auto* generate = app.add_subcommand("generate", "Build a sharded synthetic parallel corpus");
  std::string gen_tags, gen_empirical, gen_adapter, gen_corruptor = "builtin", gen_format = "tsv",
                      gen_rules, gen_config;
  gf::GenerationConfig gen;
  std::uint64_t gen_seed = 0;
  long long gen_timeout = 10000;
  std::size_t gen_workers = 1;
  std::vector<std::string> gen_inputs;
  std::string gen_kind = "plain";
  gf::CleanConfig gen_clean;
  bool gen_no_filter = false;
  generate->add_option("--in", gen_inputs, "Input corpus files")->required();
  generate->add_option("--kind", gen_kind, "xml | numbered | plain");
  generate->add_option("--out", gen.output_dir, "Output directory")->required();
  generate->add_option("--min-words", gen_clean.min_words);
  generate->add_option("--max-words", gen_clean.max_words);
  generate->add_flag("--no-filter", gen_no_filter, "Input is already clean; skip normalization and filtering");
  generate->add_option("--tags", gen_tags, "Fixed tag set for every sentence");
  generate->add_option("--empirical", gen_empirical, "Label file to sample tag rows from");
  generate->add_option("--adapter", gen_adapter, "Command line of an external model");
  generate->add_option("--corruptor", gen_corruptor, "builtin | adapter");
  generate->add_option("--format", gen_format, "tsv | srctgt");
  generate->add_option("--rules", gen_rules, "Word rule table TSV");
  generate->add_option("--shards", gen.shards)->check(CLI::PositiveNumber);
  auto* gen_seed_opt = generate->add_option("--seed", gen_seed);
  generate->add_option("--retries", gen.adapter_retries, "Adapter retries per sentence");
  generate->add_option("--timeout-ms", gen_timeout, "Adapter reply timeout");
  generate->add_option("--adapter-workers", gen_workers, "Concurrent adapter processes");
  generate->add_option("--config", gen_config, "JSON job description; flags override it");

  // encode ----------------------------------------------------------------
  auto* encode = app.add_subcommand("encode", "Prefix sentences with the tag mask");
  std::string enc_in = "-", enc_tags, enc_out = "-";
  encode->add_option("-i,--input", enc_in);
  encode->add_option("--tags", enc_tags, "Comma-separated tag codes")->required();
  encode->add_option("-o,--output", enc_out);

  // evaluate-tags ---------------------------------------------------------
  auto* eval_tags = app.add_subcommand("evaluate-tags", "Multi-label tagging metrics");
  std::string et_pred, et_gold, et_out = "-";
  double et_threshold = 0.5, et_step = 0.01;
  bool et_probs = false, et_sweep = false;
  eval_tags->add_option("--pred", et_pred, "Predicted labels, or probabilities with --probabilities")->required();
  eval_tags->add_option("--gold", et_gold, "Gold labels")->required();
  eval_tags->add_flag("--probabilities", et_probs, "Prediction file holds 26 probabilities per line");
  eval_tags->add_option("--threshold", et_threshold, "Binarization threshold");
  eval_tags->add_flag("--sweep", et_sweep, "Pick the threshold maximizing micro F1");
  eval_tags->add_option("--step", et_step, "Sweep grid step");
  eval_tags->add_option("-o,--output", et_out);

  // sweep -----------------------------------------------------------------
  auto* sweep = app.add_subcommand("sweep", "Micro F1 over a threshold grid");
  std::string sw_probs, sw_gold, sw_out = "-";
  double sw_step = 0.01;
  sweep->add_option("--probs", sw_probs)->required();
  sweep->add_option("--gold", sw_gold)->required();
  sweep->add_option("--step", sw_step);
  sweep->add_option("-o,--output", sw_out);

  // evaluate-gec ----------------------------------------------------------
  auto* eval_gec = app.add_subcommand("evaluate-gec", "Word-edit F0.5 and BLEU-4 of corrections");
  std::string eg_src, eg_hyp, eg_ref, eg_out = "-";
  eval_gec->add_option("--src", eg_src, "Source sentences")->required();
  eval_gec->add_option("--hyp", eg_hyp, "System corrections")->required();
  eval_gec->add_option("--ref", eg_ref, "Reference corrections")->required();
  eval_gec->add_option("-o,--output", eg_out);

  // stats -----------------------------------------------------------------
  auto* stats = app.add_subcommand("stats", "Tag counts, percentages and class weights");
  std::string st_labels, st_out = "-";
  stats->add_option("labels", st_labels)->required();
  stats->add_option("-o,--output", st_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitContract;
  }

  try {
    if (*prepare) {
      gf::CorpusSource src{gf::parse_source_kind(prep_kind), prep_inputs};
      clean.strip_links_mentions_hashtags = !keep_links;
      clean.normalize = !no_normalize;
      if (!prep_spelling.empty()) clean.spelling = gf::SpellingRules::load(prep_spelling);
      Output out(prep_out, force);
      gf::DropStats drops;
      gf::IngestStats ing = gf::ingest(src, [&](gf::Record r) {
        if (auto t = gf::clean_record(r, clean, drops)) out.stream() << *t << '\n';
      });
      out.close();
      json j = {{"ingest",
                 {{"files", ing.files},
                  {"records", ing.records},
                  {"invalid_utf8", ing.invalid_utf8},
                  {"malformed_elements", ing.malformed_elements}}},
                {"filter", drops.to_json()}};
      if (!prep_stats.empty())
        write_json(j, prep_stats, force);
      else
        std::cerr << j.dump() << '\n';
    } else if (*annotate) {
      gf::RuleTable rules = ann_rules.empty() ? gf::RuleTable{} : gf::RuleTable::load(ann_rules);
      std::vector<std::pair<gf::Sentence, gf::Sentence>> pairs;
      if (!ann_pairs.empty()) {
        pairs = read_pairs(ann_pairs, ann_format);
      } else {
        if (ann_raw.empty() || ann_ref.empty()) throw gf::MalformedInput("annotate needs --raw and --ref, or --pairs");
        auto raw = read_lines(ann_raw), ref = read_lines(ann_ref);
        if (raw.size() != ref.size())
          throw gf::ShapeError("--raw has " + std::to_string(raw.size()) + " lines, --ref has " +
                               std::to_string(ref.size()));
        for (std::size_t i = 0; i < raw.size(); ++i) pairs.emplace_back(gf::Sentence(raw[i]), gf::Sentence(ref[i]));
      }
      gf::CorpusAnnotation a = gf::annotate_corpus(pairs, rules, threads);
      Output out(ann_out, force);
      for (const auto& row : a.rows) out.stream() << gf::encode_mask(row) << '\n';
      out.close();
      json j = gf::corpus_stats(a.rows).to_json();
      j["edits"] = a.edits;
      j["unknown_edits"] = a.unknown_edits;
      j["unknown_rate"] = a.unknown_rate();
      if (!ann_stats.empty())
        write_json(j, ann_stats, force);
      else
        std::cerr << j.dump() << '\n';
    } else if (*corrupt) {
      gf::TagSet tags = parse_tag_list(cor_tags);
      gf::RuleTable rules = cor_rules.empty() ? gf::RuleTable{} : gf::RuleTable::load(cor_rules);
      std::uint64_t seed = resolve_seed(cor_seed_opt, cor_seed);
      auto lines = read_lines(cor_in);
      Output out(cor_out, force);
      for (std::size_t i = 0; i < lines.size(); ++i) {
        std::uint64_t s = gf::sentence_seed(seed, lines[i], i);
        auto [sent, rep] = gf::corrupt(gf::Sentence(lines[i]), tags, s, rules);
        if (!cor_plan) {
          out.stream() << sent.text << '\n';
          continue;
        }
        json steps = json::array();
        for (const auto& st : rep.plan.steps)
          steps.push_back({{"tag", gf::code_of(st.tag)},
                           {"kind", gf::injection_name(st.kind)},
                           {"token", st.token},
                           {"pos", st.pos},
                           {"text", st.text}});
        json j = {{"seed", s},
                  {"corrupted", sent.text},
                  {"fulfilled", codes_json(rep.fulfilled)},
                  {"unfulfilled", codes_json(rep.unfulfilled)},
                  {"steps", steps}};
        out.stream() << j.dump() << '\n';
      }
      out.close();
    } else if (*generate) {
      if (!gen_config.empty()) {
        std::ifstream cf(gen_config);
        if (!cf) throw gf::IoError("cannot open config", gen_config);
        json c;
        try {
          c = json::parse(cf);
        } catch (const json::exception& e) {
          throw gf::MalformedInput(gen_config + ": " + e.what());
        }
        auto take = [&](const char* key, auto& dst, const char* flag) {
          if (c.contains(key) && generate->count(flag) == 0) c.at(key).get_to(dst);
        };
        try {
          take("seed", gen_seed, "--seed");
          take("shards", gen.shards, "--shards");
          take("format", gen_format, "--format");
          take("tags", gen_tags, "--tags");
          take("empirical", gen_empirical, "--empirical");
          take("adapter", gen_adapter, "--adapter");
          take("corruptor", gen_corruptor, "--corruptor");
          take("rules", gen_rules, "--rules");
          take("retries", gen.adapter_retries, "--retries");
          take("timeout_ms", gen_timeout, "--timeout-ms");
          take("adapter_workers", gen_workers, "--adapter-workers");
          take("kind", gen_kind, "--kind");
          take("min_words", gen_clean.min_words, "--min-words");
          take("max_words", gen_clean.max_words, "--max-words");
        } catch (const json::exception& e) {
          throw gf::MalformedInput(gen_config + ": " + e.what());
        }
        if (c.contains("seed") && gen_seed_opt->count() == 0) {
          gen.seed = gen_seed;
        } else {
          gen.seed = resolve_seed(gen_seed_opt, gen_seed);
        }
      } else {
        gen.seed = resolve_seed(gen_seed_opt, gen_seed);
      }
      gen.format = gf::parse_corpus_format(gen_format);
      gen.threads = threads;
      gen.overwrite = force;
      gf::CorpusSource gen_src{gf::parse_source_kind(gen_kind), gen_inputs};
      int sources = !gen_tags.empty() + !gen_empirical.empty() + (!gen_adapter.empty() && gen_corruptor != "adapter");
      if (gen_tags.empty() && gen_empirical.empty() && gen_adapter.empty())
        throw gf::MalformedInput("one of --tags, --empirical or --adapter is required");
      if (sources > 1) throw gf::MalformedInput("choose exactly one tag source");
      if (gen_corruptor != "builtin" && gen_corruptor != "adapter")
        throw gf::MalformedInput("unknown corruptor: " + gen_corruptor);
      std::unique_ptr<gf::AdapterPool> pool;
      if (!gen_adapter.empty()) {
        gf::AdapterConfig ac;
        ac.command = split_command(gen_adapter);
        ac.timeout = std::chrono::milliseconds(gen_timeout);
        ac.workers = gen_workers;
        pool = std::make_unique<gf::AdapterPool>(ac);
      }
      if (gen_corruptor == "adapter" && !pool) throw gf::MalformedInput("--corruptor adapter needs --adapter");
      gf::RuleTable rules = gen_rules.empty() ? gf::RuleTable{} : gf::RuleTable::load(gen_rules);
      std::unique_ptr<gf::TagProvider> tagger;
      if (!gen_tags.empty())
        tagger = std::make_unique<gf::FixedTagProvider>(parse_tag_list(gen_tags));
      else if (!gen_empirical.empty())
        tagger = std::make_unique<gf::EmpiricalTagProvider>(read_labels(gen_empirical));
      else
        tagger = std::make_unique<gf::AdapterTagProvider>(*pool);
      std::unique_ptr<gf::Corruptor> corruptor;
      if (gen_corruptor == "adapter")
        corruptor = std::make_unique<gf::AdapterCorruptor>(*pool, rules);
      else
        corruptor = std::make_unique<gf::BuiltinCorruptor>(rules);

      std::vector<std::string> clean_lines;
      gf::DropStats drops;
      gf::IngestStats ing = gf::ingest(gen_src, [&](gf::Record r) {
        if (gen_no_filter) {
          ++drops.lines_in;
          if (!r.valid_utf8) {
            ++drops.encoding;
            return;
          }
          ++drops.kept;
          clean_lines.push_back(std::move(r.text));
          return;
        }
        if (auto t = gf::clean_record(r, gen_clean, drops)) clean_lines.push_back(std::move(*t));
      });
      gen.preprocessing = {{"kind", gen_kind},
                           {"files", ing.files},
                           {"records", ing.records},
                           {"malformed_elements", ing.malformed_elements},
                           {"filtered", !gen_no_filter},
                           {"drops", drops.to_json()}};
      gf::GenerationSummary sum = gf::generate(std::span<const std::string>(clean_lines), *tagger, *corruptor, gen);
      std::cout << sum.files.back() << '\n';
      std::cerr << "sentences=" << sum.sentences << " emitted=" << sum.emitted
                << " skipped=" << sum.skipped_empty + sum.skipped_adapter << '\n';
      if (sum.emitted == 0 && sum.skipped_adapter > 0) return kExitAdapter;
    } else if (*encode) {
      gf::TagSet tags = parse_tag_list(enc_tags);
      Output out(enc_out, force);
      for (const auto& line : read_lines(enc_in)) out.stream() << gf::format_source_line(tags, line) << '\n';
      out.close();
    } else if (*eval_tags) {
      gf::LabelMatrix gold = read_labels(et_gold);
      json j;
      if (et_probs || et_sweep) {
        gf::ProbabilityMatrix probs = read_probabilities(et_pred);
        double t = et_threshold;
        if (et_sweep) {
          gf::ThresholdSweepResult s = gf::sweep_threshold(probs, gold, et_step);
          t = s.best_threshold;
          j["sweep"] = sweep_json(s);
        }
        j["threshold"] = t;
        j["report"] = report_json(gf::metrics_report(probs.binarize(t), gold));
      } else {
        j["report"] = report_json(gf::metrics_report(read_labels(et_pred), gold));
      }
      write_json(j, et_out, force);
    } else if (*sweep) {
      write_json(sweep_json(gf::sweep_threshold(read_probabilities(sw_probs), read_labels(sw_gold), sw_step)),
                 sw_out, force);
    } else if (*eval_gec) {
      auto src = read_lines(eg_src), hyp = read_lines(eg_hyp), ref = read_lines(eg_ref);
      if (src.size() != hyp.size() || src.size() != ref.size())
        throw gf::ShapeError("source, hypothesis and reference line counts differ");
      gf::GecCounts counts;
      gf::BleuStats bleu;
      for (std::size_t i = 0; i < src.size(); ++i) {
        gf::Sentence s(src[i]), h(hyp[i]), r(ref[i]);
        counts += gf::gec_counts(s, h, r);
        bleu += gf::bleu_stats(h.tokens, r.tokens);
      }
      gf::GecScore g = gf::gec_score_from(counts);
      gf::BleuScore b = gf::bleu_from_stats(bleu);
      json j = {{"sentences", src.size()},
                {"edits",
                 {{"proposed", counts.proposed},
                  {"gold", counts.gold},
                  {"matched", counts.matched},
                  {"precision", g.precision},
                  {"recall", g.recall},
                  {"f1", g.f1},
                  {"f05", g.f05}}},
                {"bleu",
                 {{"bleu4", b.bleu4},
                  {"brevity_penalty", b.brevity_penalty},
                  {"precisions", b.precisions},
                  {"candidate_length", b.candidate_length},
                  {"reference_length", b.reference_length},
                  {"degenerate", b.degenerate}}}};
      write_json(j, eg_out, force);
    } else if (*stats) {
      gf::LabelMatrix rows = read_labels(st_labels);
      write_json(gf::corpus_stats(rows).to_json(), st_out, force);
    }
  } catch (const gf::IoError& e) {
    std::cerr << "gecforge: " << e.what() << '\n';
    return kExitIo;
  } catch (const gf::AdapterError& e) {
    std::cerr << "gecforge: adapter: " << e.what() << '\n';
    return kExitAdapter;
  } catch (const gf::Error& e) {
    std::cerr << "gecforge: " << e.what() << '\n';
    return kExitContract;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "gecforge: " << e.what() << '\n';
    return kExitIo;
  }
  return 0;
}
