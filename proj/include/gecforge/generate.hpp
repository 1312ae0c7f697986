#pragma once

#include <array>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "gecforge/adapter.hpp"
#include "gecforge/areta.hpp"
#include "gecforge/corrupt.hpp"
#include "gecforge/error.hpp"
#include "gecforge/parallel.hpp"
#include "gecforge/rng.hpp"
#include "gecforge/sentence.hpp"
#include "gecforge/tagcodec.hpp"
#include "gecforge/tags.hpp"

// Synthetic parallel corpus generation: clean sentence -> tags -> corrupted
// sentence -> training line, sharded and reproducible from the job seed.
namespace gecforge {

class OutputExists : public Error {
 public:
  explicit OutputExists(const std::string& path)
      : Error("output already exists (pass overwrite to replace it): " + path) {}
};

/// Seed of the sentence at `ordinal`. Independent of worker count and shard layout.
inline std::uint64_t sentence_seed(std::uint64_t job_seed, std::string_view text, std::uint64_t ordinal) {
  return counter_draw(job_seed, fnv1a64(text), ordinal);
}

// ---------------------------------------------------------------------------
// Tag providers and corruptors. Implementations must be safe to call from
// several threads at once.
// ---------------------------------------------------------------------------

class TagProvider {
 public:
  virtual ~TagProvider() = default;
  virtual TagSet tags(const Sentence& s, std::uint64_t seed) const = 0;
  virtual std::string name() const = 0;
};

class FixedTagProvider : public TagProvider {
 public:
  explicit FixedTagProvider(TagSet tags) : tags_(tags) {}
  TagSet tags(const Sentence&, std::uint64_t) const override { return tags_; }
  std::string name() const override { return "fixed:" + tags_.codes(); }

 private:
  TagSet tags_;
};

/// Draws a whole tag row from an observed label matrix, so tag co-occurrence
/// follows the source distribution.
class EmpiricalTagProvider : public TagProvider {
 public:
  static constexpr std::uint64_t kStream = 0x7A65;

  explicit EmpiricalTagProvider(LabelMatrix rows) : rows_(std::move(rows)) {
    if (rows_.empty()) throw MalformedInput("empirical tag distribution has no rows");
  }
  TagSet tags(const Sentence&, std::uint64_t seed) const override {
    return rows_[bounded(counter_draw(seed, kStream, 0), rows_.size())];
  }
  std::string name() const override { return "empirical:" + std::to_string(rows_.size()); }

 private:
  LabelMatrix rows_;
};

class AdapterTagProvider : public TagProvider {
 public:
  explicit AdapterTagProvider(AdapterPool& pool) : pool_(&pool) {}
  TagSet tags(const Sentence& s, std::uint64_t) const override { return pool_->request_tags(s); }
  std::string name() const override { return "adapter"; }

 private:
  AdapterPool* pool_;
};

class Corruptor {
 public:
  virtual ~Corruptor() = default;
  virtual std::pair<Sentence, CorruptionReport> corrupt(const Sentence& correct, const TagSet& tags,
                                                        std::uint64_t seed) const = 0;
  virtual std::string name() const = 0;
};

class BuiltinCorruptor : public Corruptor {
 public:
  explicit BuiltinCorruptor(RuleTable table = {}) : table_(std::move(table)) {}
  std::pair<Sentence, CorruptionReport> corrupt(const Sentence& correct, const TagSet& tags,
                                                std::uint64_t seed) const override {
    return gecforge::corrupt(correct, tags, seed, table_);
  }
  std::string name() const override { return "builtin"; }

 private:
  RuleTable table_;
};

/// Delegates generation to an external model. Fulfilled tags are the requested
/// tags that annotating (corrupted, correct) actually finds.
class AdapterCorruptor : public Corruptor {
 public:
  explicit AdapterCorruptor(AdapterPool& pool, RuleTable table = {}) : pool_(&pool), table_(std::move(table)) {}
  std::pair<Sentence, CorruptionReport> corrupt(const Sentence& correct, const TagSet& tags,
                                                std::uint64_t seed) const override {
    Sentence out(pool_->request_corruption(tags, correct));
    CorruptionReport r;
    r.requested = tags;
    r.plan.seed = seed;
    TagSet observed = annotate(out, correct, table_).sentence_tags;
    r.fulfilled = tags & observed;
    r.unfulfilled = tags - observed;
    return {std::move(out), std::move(r)};
  }
  std::string name() const override { return "adapter"; }

 private:
  AdapterPool* pool_;
  RuleTable table_;
};

// ---------------------------------------------------------------------------
// Jobs
// ---------------------------------------------------------------------------

struct GenerationConfig {
  std::uint64_t seed = 0;
  std::size_t shards = 1;
  CorpusFormat format = CorpusFormat::Tsv;
  std::string output_dir;
  std::string shard_prefix = "shard";
  bool overwrite = false;
  std::size_t threads = default_threads();
  std::size_t batch_size = 1024;
  std::size_t adapter_retries = 2;  // extra attempts after an adapter failure
  nlohmann::ordered_json preprocessing;  // copied into the manifest when set
};

struct GeneratedExample {
  std::uint64_t ordinal = 0;
  std::uint64_t seed = 0;
  std::string source_line;
  std::string target_line;
  CorruptionReport report;
  std::size_t failed_attempts = 0;
  bool skipped = false;
};

/// Produces one example. Adapter failures are retried `retries` times; after
/// that the example is marked skipped.
inline GeneratedExample generate_one(const std::string& text, std::uint64_t ordinal, std::uint64_t job_seed,
                                     const TagProvider& tagger, const Corruptor& corruptor, std::size_t retries) {
  GeneratedExample ex;
  ex.ordinal = ordinal;
  ex.seed = sentence_seed(job_seed, text, ordinal);
  Sentence correct(text);
  for (std::size_t attempt = 0; attempt <= retries; ++attempt) {
    try {
      TagSet tags = tagger.tags(correct, ex.seed);
      auto [corrupted, report] = corruptor.corrupt(correct, tags, ex.seed);
      auto [src, tgt] = format_training_line(report.fulfilled, correct, &corrupted);
      ex.source_line = std::move(src);
      ex.target_line = std::move(*tgt);
      ex.report = std::move(report);
      return ex;
    } catch (const AdapterError&) {
      ++ex.failed_attempts;
    }
  }
  ex.skipped = true;
  return ex;
}

struct GenerationSummary {
  std::uint64_t sentences = 0;
  std::uint64_t emitted = 0;
  std::uint64_t skipped_empty = 0;
  std::uint64_t skipped_adapter = 0;
  std::uint64_t failed_attempts = 0;
  std::array<std::uint64_t, kTagCount> requested{};
  std::array<std::uint64_t, kTagCount> fulfilled{};
  std::vector<std::string> files;  // every output file, manifest last
  nlohmann::ordered_json manifest;
};

namespace detail {

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline std::uint64_t file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot reopen output", path);
  std::uint64_t h = fnv1a64("");
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) h = fnv1a64(std::string_view(buf, in.gcount()), h);
  return h;
}

inline std::string shard_base(const GenerationConfig& cfg, std::size_t shard) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "-%05zu", shard);
  return (std::filesystem::path(cfg.output_dir) / (cfg.shard_prefix + buf)).string();
}

inline std::vector<std::string> shard_files(const std::string& base, CorpusFormat f) {
  if (f == CorpusFormat::Tsv) return {base + ".tsv"};
  return {base + ".src", base + ".tgt"};
}

}  // namespace detail

using SentenceSource = std::function<std::optional<std::string>()>;

/// Streams sentences through tagging and corruption in batches of
/// `batch_size`. Sentence i goes to shard i mod shards. Output bytes depend
/// only on the input, the providers and the job seed.
inline GenerationSummary generate(const SentenceSource& next, const TagProvider& tagger, const Corruptor& corruptor,
                                  const GenerationConfig& cfg) {
  if (cfg.shards == 0) throw MalformedInput("shard count must be positive");
  if (cfg.output_dir.empty()) throw MalformedInput("output directory is required");
  namespace fs = std::filesystem;
  fs::create_directories(cfg.output_dir);
  const std::string manifest_path = (fs::path(cfg.output_dir) / "manifest.json").string();

  std::vector<std::string> planned;
  for (std::size_t s = 0; s < cfg.shards; ++s)
    for (auto& p : detail::shard_files(detail::shard_base(cfg, s), cfg.format)) planned.push_back(p);
  planned.push_back(manifest_path);
  if (!cfg.overwrite)
    for (const auto& p : planned)
      if (fs::exists(p)) throw OutputExists(p);

  std::vector<std::unique_ptr<ParallelWriter>> writers;
  for (std::size_t s = 0; s < cfg.shards; ++s)
    writers.push_back(std::make_unique<ParallelWriter>(detail::shard_base(cfg, s), cfg.format));

  GenerationSummary sum;
  std::uint64_t input_digest = fnv1a64("");
  std::uint64_t ordinal = 0;
  const std::size_t batch = std::max<std::size_t>(1, cfg.batch_size);
  std::vector<std::string> texts;
  std::vector<GeneratedExample> results;
  bool done = false;
  while (!done) {
    texts.clear();
    while (texts.size() < batch) {
      auto t = next();
      if (!t) {
        done = true;
        break;
      }
      input_digest = fnv1a64(*t, input_digest);
      input_digest = fnv1a64("\n", input_digest);
      texts.push_back(std::move(*t));
    }
    results.assign(texts.size(), {});
    const std::uint64_t base = ordinal;
    parallel_for(texts.size(), cfg.threads, [&](std::size_t i) {
      if (tokenize(texts[i]).empty()) {
        results[i].ordinal = base + i;
        results[i].skipped = true;
        return;
      }
      results[i] = generate_one(texts[i], base + i, cfg.seed, tagger, corruptor, cfg.adapter_retries);
    });
    for (std::size_t i = 0; i < texts.size(); ++i) {
      const GeneratedExample& ex = results[i];
      ++sum.sentences;
      sum.failed_attempts += ex.failed_attempts;
      if (ex.skipped) {
        if (ex.failed_attempts > 0)
          ++sum.skipped_adapter;
        else
          ++sum.skipped_empty;
        continue;
      }
      for (std::size_t t = 0; t < kTagCount; ++t) {
        if (ex.report.requested.test(t)) ++sum.requested[t];
        if (ex.report.fulfilled.test(t)) ++sum.fulfilled[t];
      }
      writers[ex.ordinal % cfg.shards]->write(ex.source_line, ex.target_line);
      ++sum.emitted;
    }
    ordinal += texts.size();
  }

  nlohmann::ordered_json files = nlohmann::ordered_json::array();
  for (std::size_t s = 0; s < cfg.shards; ++s) {
    writers[s]->close();
    for (const auto& p : writers[s]->paths()) {
      files.push_back({{"path", fs::path(p).filename().string()},
                       {"shard", s},
                       {"lines", writers[s]->lines()},
                       {"fnv1a64", detail::hex64(detail::file_digest(p))}});
      sum.files.push_back(p);
    }
  }

  nlohmann::ordered_json tags = nlohmann::ordered_json::object();
  for (std::size_t t = 0; t < kTagCount; ++t) {
    if (sum.requested[t] == 0) continue;
    tags[std::string(code_of(tag_at(t)))] = {{"requested", sum.requested[t]},
                                             {"fulfilled", sum.fulfilled[t]},
                                             {"unfulfilled", sum.requested[t] - sum.fulfilled[t]}};
  }
  sum.manifest = {
      {"manifest_version", 1},
      {"job_seed", cfg.seed},
      {"sentence_seed", "counter_draw(job_seed, fnv1a64(sentence), ordinal)"},
      {"tag_provider", tagger.name()},
      {"corruptor", corruptor.name()},
      {"format", cfg.format == CorpusFormat::Tsv ? "tsv" : "srctgt"},
      {"shards", cfg.shards},
      {"shard_assignment", "round_robin: ordinal mod shards, input order within a shard"},
      {"mask_tags", "fulfilled"},
      {"input", {{"sentences", sum.sentences}, {"fnv1a64", detail::hex64(input_digest)}}},
      {"preprocessing", cfg.preprocessing},
      {"output",
       {{"emitted", sum.emitted},
        {"skipped_empty", sum.skipped_empty},
        {"skipped_adapter", sum.skipped_adapter},
        {"failed_adapter_attempts", sum.failed_attempts}}},
      {"tags", tags},
      {"files", files}};
  {
    std::ofstream out(manifest_path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing", manifest_path);
    out << sum.manifest.dump(2) << '\n';
    if (!out) throw IoError("write failed", manifest_path);
  }
  sum.files.push_back(manifest_path);
  return sum;
}

inline GenerationSummary generate(std::span<const std::string> sentences, const TagProvider& tagger,
                                  const Corruptor& corruptor, const GenerationConfig& cfg) {
  std::size_t i = 0;
  return generate(
      [&]() -> std::optional<std::string> {
        if (i == sentences.size()) return std::nullopt;
        return sentences[i++];
      },
      tagger, corruptor, cfg);
}

}  // namespace gecforge
