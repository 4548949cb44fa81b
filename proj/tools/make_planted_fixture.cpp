// Writes the planted-truth fixture bundle: a disease OBO, a gene GAF, a
// generated-style corpus and a literature-style corpus whose per-seed
// disease-gene overlap is fixed by construction, plus expected.json.
//
// Construction:
//  - Every generated record mentions exactly one disease and one gene, and
//    no two records share a pair, so a sample of k records has exactly k
//    candidate disease-gene links and no other links.
//  - "Planted" records pair a reference disease with a reference gene;
//    "decoy" records pair a decoy disease with a decoy gene. Decoy terms
//    never occur in the literature corpus.
//  - Every literature sample for the documented seeds contains at least one
//    hub record mentioning all reference diseases and genes, so every
//    reference pair is a literature link in every documented sample.
//  - Labels are chosen (greedy flips) so that the number of planted records
//    drawn for seed s equals a target spread evenly over [0.70, 0.86].
// The sample draw depends only on corpus size and seed, which is what makes
// planting possible.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "biofact/corpus.hpp"

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

constexpr std::size_t kGenerated = 1000;
constexpr std::size_t kLiterature = 5000;
constexpr std::size_t kSampleSize = 250;
constexpr std::size_t kSeeds = 10;
constexpr std::size_t kGrid = 32;  // reference and decoy vocabularies are kGrid x kGrid
constexpr std::size_t kLiteratureOnly = 20;

const char* kSyllables[] = {"ka", "lo", "mi", "nu", "pe", "ri", "so", "tu", "va", "xe"};

std::string pseudo_word(std::size_t i, const char* tail) {
  std::string w;
  for (int d = 0; d < 3; ++d) {
    w += kSyllables[i % 10];
    i /= 10;
  }
  return w + tail;
}

struct Term {
  std::string id;
  std::string name;
  std::vector<std::string> synonyms;
  std::vector<std::string> mention_forms;  // text forms used in abstracts
};

Term disease(const std::string& id, std::size_t i, const char* a, const char* b,
             const char* head) {
  Term t;
  t.id = id;
  std::string w1 = pseudo_word(i, a), w2 = pseudo_word(i, b);
  t.name = w1 + " " + w2 + " " + head;
  t.synonyms = {w1 + "-" + w2 + " tumour"};
  // Full name, its trailing bigram, its leading bigram, and the synonym.
  t.mention_forms = {t.name, w2 + " " + head, w1 + " " + w2, t.synonyms[0]};
  return t;
}

Term gene(const std::string& id, const std::string& symbol, const std::string& alias) {
  Term t;
  t.id = id;
  t.name = symbol;
  t.synonyms = {alias};
  t.mention_forms = {symbol, alias};
  return t;
}

const char* kFiller[] = {"we",       "observed", "expression", "patients", "cohort",
                         "analysis", "marked",   "associated", "levels",   "response",
                         "treatment", "clinical", "study",     "results",  "suggest",
                         "pathway",  "mechanism", "samples",   "increased", "reduced",
                         "tissue",   "signaling", "evidence",  "mutation", "variant"};

std::string filler(std::mt19937_64& rng, std::size_t words) {
  std::string out;
  for (std::size_t i = 0; i < words; ++i) {
    if (i) out += ' ';
    out += kFiller[rng() % std::size(kFiller)];
  }
  return out;
}

void write(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << bytes;
  if (!out) throw std::runtime_error("cannot write " + p.string());
}

std::string obo(const std::vector<const std::vector<Term>*>& groups) {
  std::string out = "format-version: 1.2\nontology: planted-fixture\n\n";
  for (const auto* g : groups)
    for (const auto& t : *g) {
      out += "[Term]\nid: " + t.id + "\nname: " + t.name + "\n";
      for (const auto& s : t.synonyms) out += "synonym: \"" + s + "\" EXACT []\n";
      out += "\n";
    }
  // An obsolete stanza and a typedef exercise the parser's skip rules.
  out += "[Term]\nid: PF:D9999\nname: obsolete planted carcinoma\nis_obsolete: true\n\n";
  out += "[Typedef]\nid: part_of\nname: part of\n";
  return out;
}

std::string gaf(const std::vector<const std::vector<Term>*>& groups) {
  std::string out = "!gaf-version: 2.2\n!planted fixture gene vocabulary\n";
  for (const auto* g : groups)
    for (const auto& t : *g) {
      std::string object_id = t.id.substr(t.id.find(':') + 1);
      // Two annotation rows per symbol; the parser collapses them.
      for (const char* go : {"GO:0008150", "GO:0005575"}) {
        out += "PF\t" + object_id + "\t" + t.name + "\t\t" + go +
               "\tPMID:0\tIEA\t\tP\t" + t.name + " protein\t" + t.synonyms[0] +
               "\tprotein\ttaxon:9606\t20240101\tPF\t\t\n";
      }
    }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <output-dir>\n", argv[0]);
    return 1;
  }
  const fs::path dir = argv[1];
  fs::create_directories(dir);

  std::vector<Term> ref_d, ref_g, decoy_d, decoy_g, lit_d, lit_g;
  char id[32];
  for (std::size_t i = 0; i < kGrid; ++i) {
    std::snprintf(id, sizeof id, "PF:D%04zu", i + 1);
    ref_d.push_back(disease(id, i, "ta", "mic", "carcinoma"));
    std::snprintf(id, sizeof id, "PF:D%04zu", i + 101);
    decoy_d.push_back(disease(id, i + 100, "bo", "lar", "dystrophy"));
    char sym[16], alias[16];
    std::snprintf(id, sizeof id, "PF:G%04zu", i + 1);
    std::snprintf(sym, sizeof sym, "RGN%zu", i + 1);
    std::snprintf(alias, sizeof alias, "RGNA%zu", i + 1);
    ref_g.push_back(gene(id, sym, alias));
    std::snprintf(id, sizeof id, "PF:G%04zu", i + 101);
    std::snprintf(sym, sizeof sym, "DCY%zu", i + 1);
    std::snprintf(alias, sizeof alias, "DCYA%zu", i + 1);
    decoy_g.push_back(gene(id, sym, alias));
  }
  for (std::size_t i = 0; i < kLiteratureOnly; ++i) {
    std::snprintf(id, sizeof id, "PF:D%04zu", i + 201);
    lit_d.push_back(disease(id, i + 200, "ne", "sic", "syndrome"));
    char sym[16], alias[16];
    std::snprintf(id, sizeof id, "PF:G%04zu", i + 201);
    std::snprintf(sym, sizeof sym, "LTG%zu", i + 1);
    std::snprintf(alias, sizeof alias, "LTGA%zu", i + 1);
    lit_g.push_back(gene(id, sym, alias));
  }

  // Label assignment over the generated corpus.
  std::vector<std::vector<std::size_t>> draws;
  for (std::uint64_t s = 1; s <= kSeeds; ++s)
    draws.push_back(biofact::sample_indices(kGenerated, kSampleSize, s));
  std::vector<long> target(kSeeds);
  for (std::size_t s = 0; s < kSeeds; ++s)
    target[s] = std::lround(kSampleSize * (0.70 + 0.16 * static_cast<double>(s) / (kSeeds - 1)));
  std::vector<std::vector<std::size_t>> member(kGenerated);
  for (std::size_t s = 0; s < kSeeds; ++s)
    for (std::size_t r : draws[s]) member[r].push_back(s);

  std::mt19937_64 rng(20240501);
  std::vector<bool> planted(kGenerated);
  for (std::size_t r = 0; r < kGenerated; ++r) planted[r] = (rng() % 100) < 78;
  std::vector<long> count(kSeeds, 0);
  for (std::size_t s = 0; s < kSeeds; ++s)
    for (std::size_t r : draws[s]) count[s] += planted[r];
  auto error = [&] {
    long e = 0;
    for (std::size_t s = 0; s < kSeeds; ++s) e += std::labs(count[s] - target[s]);
    return e;
  };
  // Greedy flips; when no flip improves, take a random neutral flip so the
  // search can move error between overlapping samples.
  for (long e = error(), step = 0; e > 0; e = error(), ++step) {
    if (step > 1000000) {
      std::fprintf(stderr, "label search did not converge (error %ld)\n", e);
      return 1;
    }
    long best_gain = 0;
    std::vector<std::size_t> best, neutral;
    for (std::size_t r = 0; r < kGenerated; ++r) {
      if (member[r].empty()) continue;
      long delta = planted[r] ? -1 : 1, gain = 0;
      for (std::size_t s : member[r])
        gain += std::labs(count[s] - target[s]) - std::labs(count[s] + delta - target[s]);
      if (gain > best_gain) {
        best_gain = gain;
        best = {r};
      } else if (gain > 0 && gain == best_gain) {
        best.push_back(r);
      } else if (gain == 0) {
        neutral.push_back(r);
      }
    }
    const auto& pool = best.empty() ? neutral : best;
    if (pool.empty()) {
      std::fprintf(stderr, "label search stalled at error %ld\n", e);
      return 1;
    }
    std::size_t pick = pool[rng() % pool.size()];
    long delta = planted[pick] ? -1 : 1;
    planted[pick] = !planted[pick];
    for (std::size_t s : member[pick]) count[s] += delta;
  }

  // Generated corpus.
  ojson generated = ojson::array();
  std::size_t next_planted = 0, next_decoy = 0;
  std::vector<std::pair<std::string, std::string>> pairs(kGenerated);
  for (std::size_t r = 0; r < kGenerated; ++r) {
    std::size_t k = planted[r] ? next_planted++ : next_decoy++;
    const Term& d = planted[r] ? ref_d[k / kGrid] : decoy_d[k / kGrid];
    const Term& g = planted[r] ? ref_g[k % kGrid] : decoy_g[k % kGrid];
    pairs[r] = {d.id, g.id};
    const std::string& dform = d.mention_forms[rng() % d.mention_forms.size()];
    const std::string& gform = g.mention_forms[rng() % g.mention_forms.size()];
    std::string body = filler(rng, 8 + rng() % 10) + " " + dform + " " + filler(rng, 5 + rng() % 15) +
                       " " + gform + " " + filler(rng, 10 + rng() % 20) + ".";
    char gid[8];
    std::snprintf(gid, sizeof gid, "A%04zu", r + 1);
    generated.push_back({{"GPT-ID", gid},
                         {"Title", "Simulated study " + std::to_string(r + 1)},
                         {"Abstract", body}});
  }

  // Literature corpus. Hubs: the first draw of each documented seed, plus
  // every 50th record.
  std::set<std::size_t> hubs;
  for (std::uint64_t s = 1; s <= kSeeds; ++s)
    hubs.insert(biofact::sample_indices(kLiterature, kSampleSize, s).front());
  for (std::size_t r = 0; r < kLiterature; r += 50) hubs.insert(r);
  std::vector<const Term*> lit_pool;
  for (const auto* g : {&ref_d, &ref_g, &lit_d, &lit_g})
    for (const auto& t : *g) lit_pool.push_back(&t);

  ojson literature = ojson::array();
  for (std::size_t r = 0; r < kLiterature; ++r) {
    std::string body;
    if (hubs.count(r)) {
      body = "review " + filler(rng, 4);
      for (std::size_t i = 0; i < kGrid; ++i)
        body += " " + ref_d[i].name + " and " + ref_g[i].name + " " + filler(rng, 2);
    } else {
      std::size_t n = 2 + rng() % 5;
      body = filler(rng, 6 + rng() % 8);
      for (std::size_t i = 0; i < n; ++i) {
        const Term* t = lit_pool[rng() % lit_pool.size()];
        body += " " + t->mention_forms[rng() % t->mention_forms.size()] + " " + filler(rng, 3 + rng() % 6);
      }
    }
    body += ".";
    literature.push_back({{"pmid", std::to_string(100001 + r)},
                          {"title", "Literature record " + std::to_string(r + 1)},
                          {"abstract", body}});
  }

  write(dir / "disease.obo", obo({&ref_d, &decoy_d, &lit_d}));
  write(dir / "genes.gaf", gaf({&ref_g, &decoy_g, &lit_g}));
  write(dir / "generated.json", generated.dump(1) + "\n");
  write(dir / "literature.json", literature.dump(1) + "\n");

  ojson samples = ojson::array();
  for (std::size_t s = 0; s < kSeeds; ++s) {
    samples.push_back({{"seed", s + 1},
                       {"dg_candidate_links", kSampleSize},
                       {"dg_overlapping_links", count[s]},
                       {"dg_precision", static_cast<double>(count[s]) / kSampleSize},
                       {"gg_candidate_links", 0},
                       {"dd_candidate_links", 0}});
  }
  std::size_t planted_total = 0;
  for (bool p : planted) planted_total += p;
  ojson expected = {
      {"format", "biofact-planted-fixture-v1"},
      {"sample_size", kSampleSize},
      {"seeds", kSeeds},
      {"generated_records", kGenerated},
      {"literature_records", kLiterature},
      {"planted_generated_records", planted_total},
      {"literature_hub_records", hubs.size()},
      {"vocabulary",
       {{"reference_diseases", kGrid},
        {"reference_genes", kGrid},
        {"decoy_diseases", kGrid},
        {"decoy_genes", kGrid},
        {"literature_only_diseases", kLiteratureOnly},
        {"literature_only_genes", kLiteratureOnly},
        {"obsolete_terms", 1}}},
      {"samples", std::move(samples)}};
  write(dir / "expected.json", expected.dump(2) + "\n");
  return 0;
}
