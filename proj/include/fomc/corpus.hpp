#pragma once

#include "fomc/formula.hpp"
#include "fomc/generators.hpp"
#include "fomc/graph.hpp"

#include <json.hpp>

#include <set>
#include <string>
#include <vector>

namespace fomc {

struct CorpusEntry {
    std::string name;
    GenSpec gen;
    std::string interpretation;
    Dist r = 1;
    // "empty-sset" replaces the witness set by S = {} verified at radius 0,
    // which must be caught by the sset check.
    std::string plant;
};

struct Corpus {
    std::string name;
    std::vector<CorpusEntry> entries;
};

/// Colour "red" on ids divisible by 3 and flag "marked" set, so that the
/// sentence battery can use both.
void decorate(Graph & g);
Graph corpus_graph(const CorpusEntry & e);

/// paths 20..60, grids 4x4..8x8, cliques 3..8, half-graphs 3..8 and G(n, 0.3)
/// for n in {8,...,16}, each under identity, complement, square and power-3
/// with r in {1, 2}.
Corpus default_corpus();

/// One ordinary entry and one carrying the empty-sset plant.
Corpus planted_corpus();

nlohmann::ordered_json corpus_to_json(const Corpus & c);
Corpus corpus_from_json(const nlohmann::json & j);

struct BatterySentence {
    std::string name;
    std::string text;
};

/// Twelve sentences of quantifier rank at most 3 over E, "red" and "marked".
const std::vector<BatterySentence> & sentence_battery();

inline const std::set<std::string> kSuiteChecks = {"locality", "sset", "decompose", "mc"};

struct SuiteOptions {
    std::set<std::string> checks = kSuiteChecks;
    int workers = 1;
    int mc_max_vertices = 16;
    std::uint64_t seed = 0;
};

struct CheckOutcome {
    std::string check;
    bool ok = false;
    nlohmann::ordered_json detail;
};

struct EntryOutcome {
    std::string entry;
    int g_vertices = 0;
    int h_vertices = 0;
    std::vector<CheckOutcome> checks;
    std::vector<std::string> errors;

    bool ok() const;
};

EntryOutcome run_entry(const CorpusEntry & e, const SuiteOptions & opts);

struct SuiteResult {
    int exit_code = 0;
    std::size_t checks_run = 0;
    std::vector<std::string> failures;  // "<entry>/<check>"
    std::vector<std::string> warnings;
    nlohmann::ordered_json report;
};

/// Runs the selected checks on every entry, up to `workers` entries at a time.
/// Exit code 1 if any check fails or any entry errors, 0 otherwise.
SuiteResult run_suite(const Corpus & corpus, const SuiteOptions & opts);

} // namespace fomc
