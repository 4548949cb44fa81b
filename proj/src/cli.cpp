#include "biofact/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "biofact/corpus.hpp"
#include "biofact/digest.hpp"
#include "biofact/error.hpp"
#include "biofact/factcheck.hpp"
#include "biofact/generator.hpp"
#include "biofact/graph.hpp"
#include "biofact/log.hpp"
#include "biofact/matcher.hpp"
#include "biofact/metrics.hpp"
#include "biofact/ontology.hpp"

namespace biofact {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

constexpr const char* kApiKeyEnv = "BIOFACT_API_KEY";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Every artifact is first written as <name>.partial; commit() renames them
// into place, so a failed run never replaces earlier results.
class ArtifactSet {
 public:
  explicit ArtifactSet(fs::path dir) : dir_(std::move(dir)) {}

  void write(const std::string& name, const std::string& bytes) {
    fs::path final_path = dir_ / name;
    fs::create_directories(final_path.parent_path());
    fs::path staged = final_path;
    staged += ".partial";
    std::ofstream out(staged, std::ios::binary | std::ios::trunc);
    if (!out) throw RuntimeFailure("cannot write " + staged.string());
    out << bytes;
    if (!out) throw RuntimeFailure("short write to " + staged.string());
    staged_.push_back(final_path);
  }

  void commit() {
    for (const auto& p : staged_) {
      fs::path staged = p;
      staged += ".partial";
      fs::rename(staged, p);
    }
    staged_.clear();
  }

 private:
  fs::path dir_;
  std::vector<fs::path> staged_;
};

// Resolved option values of a subcommand, minus operational knobs that
// cannot change artifacts.
ojson resolved_config(const CLI::App& sub) {
  static const std::set<std::string> kOperational = {"help", "config", "threads", "log-level",
                                                     "summary", "out"};
  ojson cfg = ojson::object();
  for (const CLI::Option* opt : sub.get_options()) {
    std::string name = opt->get_single_name();
    if (name.empty() || kOperational.count(name)) continue;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      if (opt->get_expected_max() > 1 || res.size() > 1)
        cfg[name] = res;
      else if (opt->get_type_size() == 0)
        cfg[name] = true;
      else
        cfg[name] = res.empty() ? std::string() : res.front();
    } else if (opt->get_type_size() == 0) {
      cfg[name] = false;
    } else {
      cfg[name] = opt->get_default_str();
    }
  }
  return cfg;
}

class RunRecord {
 public:
  void input(const std::string& role, const std::string& path) {
    if (path.empty()) return;
    inputs_[role] = sha256_hex(read_file(path));
  }

  std::string pipeline_hash(const ojson& config) const {
    Sha256 h;
    h.add_field("biofact-run-v1");
    h.add_field(config.dump());
    for (const auto& [role, digest] : inputs_) {
      h.add_field(role);
      h.add_field(digest);
    }
    return h.hex_digest();
  }

  std::string render(const std::string& command, const ojson& config,
                     const std::string& hash) const {
    ojson in = ojson::object();
    for (const auto& [role, digest] : inputs_) in[role] = digest;
    ojson doc = {{"format", "biofact-run-v1"},
                 {"command", command},
                 {"config", config},
                 {"inputs", std::move(in)},
                 {"pipeline_hash", hash}};
    return doc.dump(2) + "\n";
  }

 private:
  std::map<std::string, std::string> inputs_;
};

struct OntologyArgs {
  std::string obo;
  std::string gaf;
  std::string disease_lexicon;
  std::string gene_lexicon;
  std::string stopwords;
  bool no_synonyms = false;

  void add_to(CLI::App* app) {
    app->add_option("--ontology", obo, "Disease ontology (OBO flat file)");
    app->add_option("--gaf", gaf, "Gene annotation file (GAF 2.x)");
    app->add_option("--disease-lexicon", disease_lexicon, "Disease lexicon TSV");
    app->add_option("--gene-lexicon", gene_lexicon, "Gene lexicon TSV");
    app->add_option("--stopwords", stopwords, "Stopword list replacing the shipped one");
    app->add_flag("--no-synonyms", no_synonyms, "Index canonical names only");
  }

  void record(RunRecord& run) const {
    run.input("ontology", obo);
    run.input("gaf", gaf);
    run.input("disease-lexicon", disease_lexicon);
    run.input("gene-lexicon", gene_lexicon);
    run.input("stopwords", stopwords);
  }

  ChunkIndex load() const {
    std::vector<TermCatalog> catalogs;
    if (!obo.empty()) {
      std::ifstream in(obo, std::ios::binary);
      if (!in) throw ValidationError("cannot open " + obo);
      catalogs.push_back(parse_disease_obo(in));
    }
    if (!disease_lexicon.empty()) {
      std::ifstream in(disease_lexicon, std::ios::binary);
      if (!in) throw ValidationError("cannot open " + disease_lexicon);
      catalogs.push_back(parse_lexicon_tsv(in, Category::Disease));
    }
    if (!gaf.empty()) {
      std::ifstream in(gaf, std::ios::binary);
      if (!in) throw ValidationError("cannot open " + gaf);
      std::size_t skipped = 0;
      catalogs.push_back(parse_gene_gaf(in, &skipped));
      if (skipped) log::warn("gaf.rows_skipped", {{"count", std::to_string(skipped)}});
    }
    if (!gene_lexicon.empty()) {
      std::ifstream in(gene_lexicon, std::ios::binary);
      if (!in) throw ValidationError("cannot open " + gene_lexicon);
      catalogs.push_back(parse_lexicon_tsv(in, Category::Gene));
    }
    if (catalogs.empty())
      throw ValidationError(
          "no vocabulary given: pass --ontology, --gaf, --disease-lexicon or --gene-lexicon");
    IndexOptions opts;
    opts.use_synonyms = !no_synonyms;
    if (!stopwords.empty()) opts.stopwords = parse_stopwords(read_file(stopwords));
    ChunkIndex index = ChunkIndex::build(catalogs, opts);
    log::info("ontology.indexed", {{"terms", std::to_string(index.term_count())},
                                   {"full", std::to_string(index.full_map().size())},
                                   {"bigrams", std::to_string(index.bigram_map().size())},
                                   {"unigrams", std::to_string(index.unigram_map().size())}});
    return index;
  }
};

struct CorpusArgs {
  std::string path;
  std::string format = "json";
  std::string id_field;
  std::string title_field;
  std::string abstract_field;
  bool lenient = false;

  // prefix "" gives --format/--id-field...; "literature-" gives
  // --literature-format/--literature-id-field...
  void add_fields(CLI::App* app, const std::string& prefix) {
    app->add_option("--" + prefix + "format", format, "Corpus format: json | jsonl")
        ->capture_default_str();
    app->add_option("--" + prefix + "id-field", id_field, "Record id field name");
    app->add_option("--" + prefix + "title-field", title_field, "Title field name");
    app->add_option("--" + prefix + "abstract-field", abstract_field, "Abstract field name");
    app->add_flag("--" + prefix + "lenient", lenient, "Skip malformed records instead of failing");
  }

  RecordCollection load(Source source) const {
    auto fmt = parse_corpus_format(format);
    if (!fmt) throw ValidationError("unknown corpus format " + format);
    LoadOptions opts;
    opts.format = *fmt;
    opts.fields = FieldMap::defaults(source);
    if (!id_field.empty()) opts.fields.id = id_field;
    if (!title_field.empty()) opts.fields.title = title_field;
    if (!abstract_field.empty()) opts.fields.abstract = abstract_field;
    opts.lenient = lenient;
    LoadResult r = load_collection(path, source, opts);
    for (const auto& w : r.warnings) log::warn("corpus.record_skipped", {{"detail", w}});
    log::info("corpus.loaded", {{"path", path},
                                {"source", std::string(to_string(source))},
                                {"records", std::to_string(r.collection.size())},
                                {"skipped", std::to_string(r.skipped)}});
    return std::move(r.collection);
  }
};

struct MatchArgs {
  std::string fields = "title+abstract";
  void add_to(CLI::App* app) {
    app->add_option("--fields", fields, "Text scanned: abstract | title+abstract")
        ->capture_default_str();
  }
  MatchOptions options() const {
    auto f = parse_scan_fields(fields);
    if (!f) throw ValidationError("--fields must be abstract or title+abstract");
    return MatchOptions{*f};
  }
};

struct GraphArgs {
  std::optional<std::size_t> window;
  std::string ambiguity = "all";
  void add_to(CLI::App* app) {
    app->add_option("--window", window, "Drop co-occurrences farther apart than N tokens");
    app->add_option("--ambiguity", ambiguity, "Ambiguous matches: all | skip")->capture_default_str();
  }
  GraphOptions options(std::size_t threads) const {
    auto a = parse_ambiguity(ambiguity);
    if (!a) throw ValidationError("--ambiguity must be all or skip");
    GraphOptions g;
    g.window = window;
    g.ambiguity = *a;
    g.threads = threads;
    return g;
  }
};

struct Common {
  std::string out;
  std::size_t threads = 0;
  bool summary = false;
  std::string log_level = "info";
  std::string config;

  void add_to(CLI::App* app, bool needs_out = true) {
    auto* o = app->add_option("--out", out, "Output directory");
    if (needs_out) o->required();
    app->add_option("--threads", threads, "Worker cap (0 = machine parallelism)")
        ->capture_default_str();
    app->add_flag("--summary", summary, "Print a one-line summary on standard output");
    app->add_option("--log-level", log_level, "debug | info | warn | error | off")
        ->capture_default_str();
    app->add_option("--config", config, "TOML config file; explicit flags win");
  }

  void apply_logging() const {
    static const std::map<std::string, log::Level> levels = {
        {"debug", log::Level::Debug}, {"info", log::Level::Info}, {"warn", log::Level::Warn},
        {"error", log::Level::Error}, {"off", log::Level::Off}};
    auto it = levels.find(log_level);
    if (it == levels.end()) throw ValidationError("unknown --log-level " + log_level);
    log::set_level(it->second);
  }
};

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
  for (const auto& a : args)
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  return false;
}

// CLI11 only reads config files bound to the root app, so a subcommand's
// --config is expanded here into ordinary arguments placed right after the
// subcommand name. Keys already given on the command line are left out.
std::vector<std::string> expand_config(const std::vector<std::string>& args,
                                       const std::vector<CLI::App*>& subs) {
  auto sub_it = std::find_if(args.begin(), args.end(), [](const std::string& a) { return a.empty() || a[0] != '-'; });
  if (sub_it == args.end()) return args;
  CLI::App* sub = nullptr;
  for (auto* s : subs)
    if (s->get_name() == *sub_it) sub = s;
  if (!sub) return args;
  std::vector<std::string> rest(sub_it + 1, args.end());
  std::string path;
  for (std::size_t i = 0; i < rest.size(); ++i) {
    if (rest[i] == "--config" && i + 1 < rest.size()) path = rest[i + 1];
    if (rest[i].rfind("--config=", 0) == 0) path = rest[i].substr(9);
  }
  if (path.empty()) return args;

  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigTOML().from_file(path);
  } catch (const CLI::ParseError& e) {
    throw ValidationError("config " + path + ": " + e.what());
  }
  std::vector<std::string> injected;
  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--") continue;
    if (!item.parents.empty() && item.parents != std::vector<std::string>{sub->get_name()}) continue;
    std::string flag = "--" + item.name;
    const CLI::Option* opt = sub->get_option_no_throw(flag);
    if (!opt || item.name == "config") throw ValidationError("config " + path + ": unknown key " + item.name);
    if (has_flag(rest, flag)) continue;
    if (opt->get_expected_max() == 0) {
      if (item.inputs.size() == 1 && item.inputs[0] == "true") injected.push_back(flag);
      continue;
    }
    injected.push_back(flag);
    if (opt->get_delimiter() != '\0') {
      std::string joined;
      for (const auto& v : item.inputs) joined += (joined.empty() ? "" : std::string(1, opt->get_delimiter())) + v;
      injected.push_back(joined);
    } else {
      injected.insert(injected.end(), item.inputs.begin(), item.inputs.end());
    }
  }
  std::vector<std::string> out(args.begin(), sub_it + 1);
  out.insert(out.end(), injected.begin(), injected.end());
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::string t = trim(item);
    if (t.empty()) continue;
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != t.size() || t.front() == '-') throw ValidationError("bad seed \"" + t + "\" in --seeds");
    out.push_back(v);
  }
  return out;
}

void finish(ArtifactSet& artifacts, RunRecord& run, const CLI::App& sub, const std::string& command,
            const std::optional<std::string>& hash_override = std::nullopt) {
  ojson cfg = resolved_config(sub);
  std::string hash = hash_override ? *hash_override : run.pipeline_hash(cfg);
  artifacts.write("run.json", run.render(command, cfg, hash));
  artifacts.commit();
}

// --- subcommands ----------------------------------------------------------

struct GenerateCmd {
  Common common;
  std::string endpoint;
  std::string model;
  std::size_t n_per_request = 10;
  std::size_t words = 200;
  std::size_t target_total = 0;
  std::size_t max_retries = 5;
  double temperature = 1.0;
  std::optional<int> max_tokens;
  std::size_t backoff_ms = 1000;
  std::size_t fanout = 1;
  std::string replay;

  CLI::App* attach(CLI::App& app) {
    auto* sub = app.add_subcommand("generate", "Generate a corpus from a chat-completion endpoint");
    common.add_to(sub);
    sub->add_option("--endpoint", endpoint, "Chat-completions URL");
    sub->add_option("--model", model, "Model name sent with each request");
    sub->add_option("--n-per-request", n_per_request, "Abstracts requested per call")->capture_default_str();
    sub->add_option("--words", words, "Words per abstract")->capture_default_str();
    sub->add_option("--target-total", target_total, "Accepted records to collect");
    sub->add_option("--max-retries", max_retries, "Failed attempts tolerated")->capture_default_str();
    sub->add_option("--temperature", temperature, "Sampling temperature")->capture_default_str();
    sub->add_option("--max-tokens", max_tokens, "Completion token cap");
    sub->add_option("--backoff-ms", backoff_ms, "Initial retry delay")->capture_default_str();
    sub->add_option("--fanout", fanout, "Concurrent requests per round")->capture_default_str();
    sub->add_option("--replay", replay, "Rebuild the corpus offline from an archive directory");
    return sub;
  }

  int run(const CLI::App& sub, std::ostream& out) {
    ArtifactSet artifacts(common.out);
    RunRecord run;
    GenerationBatch batch;
    PromptSpec prompt = build_prompt(n_per_request, words);
    EndpointConfig cfg;
    cfg.url = endpoint;
    cfg.model = model;
    cfg.temperature = temperature;
    cfg.max_tokens = max_tokens;
    cfg.max_retries = max_retries;
    cfg.backoff_base = std::chrono::milliseconds(backoff_ms);
    cfg.fanout = fanout;
    if (!replay.empty()) {
      batch = replay_archive(replay);
      run.input("archive-index", (fs::path(replay) / "index.json").string());
    } else {
      if (endpoint.empty()) throw ValidationError("--endpoint is required");
      if (model.empty()) throw ValidationError("--model is required");
      if (target_total == 0) throw ValidationError("--target-total is required");
      const char* key = std::getenv(kApiKeyEnv);
      cfg.api_key = key ? key : "";
      if (cfg.api_key.empty())
        throw ValidationError(std::string("credential missing: set ") + kApiKeyEnv);
      batch = generate_corpus(cfg, prompt, target_total);
    }
    artifacts.write("corpus.json", to_json_array(batch.accepted, FieldMap::defaults(Source::Generated)));
    if (replay.empty()) {
      // Archive files are plain writes; they exist for audit even if the run
      // is later abandoned.
      write_archive(fs::path(common.out) / "archive", batch, prompt, cfg);
    }
    finish(artifacts, run, sub, "generate");
    if (common.summary)
      out << "generated " << batch.accepted.size() << " records in " << batch.request_count
          << " requests (" << batch.rejected_count << " rejected)\n";
    return 0;
  }
};

struct ExtractCmd {
  Common common;
  OntologyArgs onto;
  CorpusArgs corpus;
  MatchArgs match;
  std::string source = "literature";

  CLI::App* attach(CLI::App& app) {
    auto* sub = app.add_subcommand("extract", "Scan a corpus for ontology term mentions");
    common.add_to(sub);
    onto.add_to(sub);
    sub->add_option("--corpus", corpus.path, "Corpus file")->required();
    sub->add_option("--source", source, "literature | generated")->capture_default_str();
    corpus.add_fields(sub, "");
    match.add_to(sub);
    return sub;
  }

  int run(const CLI::App& sub, std::ostream& out) {
    auto src = parse_source(source);
    if (!src) throw ValidationError("--source must be literature or generated");
    ArtifactSet artifacts(common.out);
    RunRecord run;
    onto.record(run);
    run.input("corpus", corpus.path);
    ChunkIndex index = onto.load();
    RecordCollection records = corpus.load(*src);
    CorpusMatches m = extract_corpus(records, index, match.options(), common.threads);
    log::info("extract.done", {{"records", std::to_string(m.stats.records)},
                               {"matches", std::to_string(m.stats.matches)},
                               {"disease", std::to_string(m.stats.disease_matches)},
                               {"gene", std::to_string(m.stats.gene_matches)}});
    artifacts.write("matches.jsonl", to_jsonl(m));
    ojson stats = {{"records", m.stats.records},
                   {"matches", m.stats.matches},
                   {"disease_matches", m.stats.disease_matches},
                   {"gene_matches", m.stats.gene_matches}};
    artifacts.write("extract_stats.json", stats.dump(2) + "\n");
    finish(artifacts, run, sub, "extract");
    if (common.summary)
      out << "scanned " << m.stats.records << " records: " << m.stats.matches << " matches ("
          << m.stats.disease_matches << " disease, " << m.stats.gene_matches << " gene)\n";
    return 0;
  }
};

struct GraphCmd {
  Common common;
  OntologyArgs onto;
  CorpusArgs corpus;
  MatchArgs match;
  GraphArgs graph;
  std::string source = "literature";
  std::string matches;

  CLI::App* attach(CLI::App& app) {
    auto* sub = app.add_subcommand("graph", "Build a co-occurrence graph");
    common.add_to(sub);
    onto.add_to(sub);
    sub->add_option("--matches", matches, "Match dump from extract (offline mode)");
    sub->add_option("--corpus", corpus.path, "Corpus file (scanned directly)");
    sub->add_option("--source", source, "literature | generated")->capture_default_str();
    corpus.add_fields(sub, "");
    match.add_to(sub);
    graph.add_to(sub);
    return sub;
  }

  int run(const CLI::App& sub, std::ostream& out) {
    if (matches.empty() == corpus.path.empty())
      throw ValidationError("give exactly one of --matches or --corpus");
    ArtifactSet artifacts(common.out);
    RunRecord run;
    onto.record(run);
    ChunkIndex index = onto.load();
    CorpusMatches m;
    if (!matches.empty()) {
      run.input("matches", matches);
      m = parse_matches_jsonl(read_file(matches));
    } else {
      auto src = parse_source(source);
      if (!src) throw ValidationError("--source must be literature or generated");
      run.input("corpus", corpus.path);
      m = extract_corpus(corpus.load(*src), index, match.options(), common.threads);
    }
    BioGraph g = build_graph(m, index, graph.options(common.threads));
    artifacts.write("graph.json", to_json(g));
    artifacts.write("edges.csv", to_edge_csv(g));
    finish(artifacts, run, sub, "graph");
    if (common.summary)
      out << "graph: " << g.node_count() << " nodes, " << g.edge_count() << " edges\n";
    return 0;
  }
};

struct MetricsCmd {
  Common common;
  std::vector<std::string> graphs;
  std::vector<std::string> generated;
  std::vector<std::string> literature;
  bool extended = false;

  CLI::App* attach(CLI::App& app) {
    auto* sub = app.add_subcommand("metrics", "Topological metrics and side-by-side tables");
    common.add_to(sub);
    sub->add_option("--graph", graphs, "Graph file(s) to measure");
    sub->add_option("--generated-graphs", generated, "Generated graphs, in sample order")->delimiter(',');
    sub->add_option("--literature-graphs", literature, "Literature graphs, in sample order")->delimiter(',');
    sub->add_flag("--extended", extended, "Also compute degree min/max/mean");
    return sub;
  }

  int run(const CLI::App& sub, std::ostream& out) {
    if (graphs.empty() && generated.empty() && literature.empty())
      throw ValidationError("give --graph or --generated-graphs with --literature-graphs");
    ArtifactSet artifacts(common.out);
    RunRecord run;
    auto load = [&](const std::string& role, const std::string& path) {
      run.input(role, path);
      return compute_metrics(parse_graph_json(read_file(path)), extended);
    };
    std::vector<GraphMetrics> single;
    for (std::size_t i = 0; i < graphs.size(); ++i) single.push_back(load("graph-" + std::to_string(i + 1), graphs[i]));
    if (!single.empty()) {
      std::string body;
      if (single.size() == 1) {
        body = to_json(single[0]);
      } else {
        body = "[\n";
        for (std::size_t i = 0; i < single.size(); ++i) {
          std::string one = to_json(single[i]);
          one.pop_back();
          body += one + (i + 1 < single.size() ? ",\n" : "\n");
        }
        body += "]\n";
      }
      artifacts.write("metrics.json", body);
      if (common.summary)
        for (const auto& m : single)
          out << "nodes=" << m.node_count << " edges=" << m.edge_count << " ne_ratio="
              << (m.ne_ratio_centi ? format_hundredths(*m.ne_ratio_centi) : std::string("null")) << "\n";
    }
    if (!generated.empty() || !literature.empty()) {
      std::vector<GraphMetrics> gen, lit;
      for (std::size_t i = 0; i < generated.size(); ++i) gen.push_back(load("generated-" + std::to_string(i + 1), generated[i]));
      for (std::size_t i = 0; i < literature.size(); ++i) lit.push_back(load("literature-" + std::to_string(i + 1), literature[i]));
      ComparisonTable t = compare(gen, lit);
      artifacts.write("table.csv", to_csv(t));
      artifacts.write("table.json", to_json(t));
      for (const auto& row : t.rows) artifacts.write("plots/" + metric_slug(row.metric) + ".csv", plot_data_csv(row));
    }
    finish(artifacts, run, sub, "metrics");
    return 0;
  }
};

std::string novel_csv(const FactCheckReport& r) {
  std::string out = "term_a,term_b,link_type,weight,support\n";
  for (const auto& e : r.novel_links)
    out += csv_field(e.endpoints.first) + "," + csv_field(e.endpoints.second) + "," +
           std::string(to_string(e.link_type)) + "," + std::to_string(e.weight) + "," +
           std::to_string(e.support) + "\n";
  return out;
}

struct FactCheckCmd {
  Common common;
  std::string candidate;
  std::string reference;
  std::size_t min_support = 1;

  CLI::App* attach(CLI::App& app) {
    auto* sub = app.add_subcommand("factcheck", "Check a candidate graph's links against a reference");
    common.add_to(sub);
    sub->add_option("--candidate", candidate, "Candidate (generated) graph")->required();
    sub->add_option("--reference", reference, "Reference (literature) graph")->required();
    sub->add_option("--min-support", min_support, "Reference support needed to count a link")
        ->capture_default_str();
    return sub;
  }

  int run(const CLI::App& sub, std::ostream& out) {
    ArtifactSet artifacts(common.out);
    RunRecord run;
    run.input("candidate", candidate);
    run.input("reference", reference);
    FactCheckReport r = fact_check(parse_graph_json(read_file(candidate)),
                                   parse_graph_json(read_file(reference)), {min_support});
    artifacts.write("factcheck.json", to_json(r));
    artifacts.write("novel_or_noise.csv", novel_csv(r));
    finish(artifacts, run, sub, "factcheck");
    if (common.summary) {
      auto p = r.for_type(LinkType::DiseaseGene).precision();
      auto o = r.overall_precision();
      char buf[128];
      std::snprintf(buf, sizeof buf, "DG precision %s; overall %s",
                    p ? std::to_string(*p).c_str() : "undefined", o ? std::to_string(*o).c_str() : "undefined");
      out << buf << "\n";
    }
    return 0;
  }
};

struct ExperimentCmd {
  Common common;
  OntologyArgs onto;
  CorpusArgs gen;
  CorpusArgs lit;
  MatchArgs match;
  GraphArgs graph;
  std::size_t sample_size = 250;
  std::size_t samples = 10;
  std::string seeds;
  std::string reference = "sample";
  std::size_t min_support = 1;
  bool extended = false;

  CLI::App* attach(CLI::App& app) {
    auto* sub = app.add_subcommand("experiment", "Run the k-sample fact-checking experiment");
    common.add_to(sub);
    onto.add_to(sub);
    sub->add_option("--generated", gen.path, "Generated corpus")->required();
    sub->add_option("--literature", lit.path, "Literature corpus")->required();
    gen.add_fields(sub, "generated-");
    lit.add_fields(sub, "literature-");
    match.add_to(sub);
    graph.add_to(sub);
    sub->add_option("--sample-size", sample_size, "Records per sample")->capture_default_str();
    sub->add_option("--samples", samples, "Number of samples")->capture_default_str();
    sub->add_option("--seeds", seeds, "Comma-separated seeds (default 1..k)");
    sub->add_option("--reference", reference, "Reference graph: sample | full")->capture_default_str();
    sub->add_option("--min-support", min_support, "Reference support needed to count a link")
        ->capture_default_str();
    sub->add_flag("--extended", extended, "Also compute degree min/max/mean");
    return sub;
  }

  int run(const CLI::App& sub, std::ostream& out) {
    ArtifactSet artifacts(common.out);
    RunRecord run;
    onto.record(run);
    run.input("generated", gen.path);
    run.input("literature", lit.path);
    auto ref = parse_reference_mode(reference);
    if (!ref) throw ValidationError("--reference must be sample or full");
    ExperimentOptions opts;
    opts.sample_size = sample_size;
    opts.sample_count = samples;
    opts.seeds = parse_seeds(seeds);
    opts.match = match.options();
    opts.graph = graph.options(1);
    opts.check.min_support = min_support;
    opts.reference = *ref;
    opts.extended_metrics = extended;
    opts.threads = common.threads;

    ChunkIndex index = onto.load();
    RecordCollection generated = gen.load(Source::Generated);
    RecordCollection literature = lit.load(Source::Literature);
    ExperimentReport report = run_experiment(generated, literature, index, opts);
    ComparisonTable table = comparison_table(report);
    const std::string summary = summary_line(report);
    artifacts.write("report.json", to_json(report));
    artifacts.write("table1.csv", to_csv(table));
    artifacts.write("table1.json", to_json(table));
    for (const auto& row : table.rows)
      artifacts.write("plots/" + metric_slug(row.metric) + ".csv", plot_data_csv(row));
    artifacts.write("summary.txt", summary + "\n");
    finish(artifacts, run, sub, "experiment", report.pipeline_hash);
    log::info("experiment.done", {{"pipeline_hash", report.pipeline_hash}, {"summary", summary}});
    if (common.summary) out << summary << "\n";
    return 0;
  }
};

void emit_error(std::ostream& err, const std::string& kind, const std::string& message) {
  ojson e = {{"error", kind}, {"message", message}};
  err << e.dump() << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"biofact: ontology-grounded co-occurrence graphs and aggregate link fact-checking"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  GenerateCmd generate;
  ExtractCmd extract;
  GraphCmd graph;
  MetricsCmd metrics;
  FactCheckCmd factcheck;
  ExperimentCmd experiment;
  CLI::App* subs[] = {generate.attach(app), extract.attach(app), graph.attach(app),
                      metrics.attach(app), factcheck.attach(app), experiment.attach(app)};

  std::vector<std::string> expanded;
  try {
    expanded = expand_config(args, {std::begin(subs), std::end(subs)});
  } catch (const ValidationError& e) {
    emit_error(err, "validation", e.what());
    return 1;
  }
  std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    const CLI::App* chosen = &app;
    for (auto* s : subs)
      if (s->parsed()) chosen = s;
    err << chosen->help();
    emit_error(err, "usage", e.what());
    return 1;
  }

  try {
    if (subs[0]->parsed()) {
      generate.common.apply_logging();
      return generate.run(*subs[0], out);
    }
    if (subs[1]->parsed()) {
      extract.common.apply_logging();
      return extract.run(*subs[1], out);
    }
    if (subs[2]->parsed()) {
      graph.common.apply_logging();
      return graph.run(*subs[2], out);
    }
    if (subs[3]->parsed()) {
      metrics.common.apply_logging();
      return metrics.run(*subs[3], out);
    }
    if (subs[4]->parsed()) {
      factcheck.common.apply_logging();
      return factcheck.run(*subs[4], out);
    }
    experiment.common.apply_logging();
    return experiment.run(*subs[5], out);
  } catch (const ValidationError& e) {
    emit_error(err, "validation", e.what());
    return 1;
  } catch (const std::exception& e) {
    emit_error(err, "runtime", e.what());
    return 2;
  }
}

}  // namespace biofact
