#include "hypersub/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "hypersub/clustering.hpp"
#include "hypersub/core.hpp"
#include "hypersub/edge_list.hpp"
#include "hypersub/error.hpp"
#include "hypersub/gnp.hpp"
#include "hypersub/motifcensus.hpp"
#include "hypersub/signatures.hpp"
#include "hypersub/thresholds.hpp"

namespace hypersub::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Globals {
    std::optional<std::uint64_t> seed;
    std::string format = "json";
    std::optional<std::size_t> max_edge_size;
    unsigned parallel = std::max(1u, std::thread::hardware_concurrency());
    std::string out_dir;
};

// Where reports go: files under --out, or the output stream.
class Sink {
public:
    Sink(const Globals& g, std::ostream& out) : dir_(g.out_dir), out_(out) {
        if (!dir_.empty()) fs::create_directories(dir_);
    }

    bool to_files() const { return !dir_.empty(); }

    void primary(const std::string& name, const std::string& content) {
        if (dir_.empty())
            out_ << content;
        else
            file(name, content);
    }

    void file(const std::string& name, const std::string& content) {
        if (dir_.empty()) return;
        const auto path = fs::path(dir_) / name;
        std::ofstream f(path, std::ios::binary);
        if (!f) throw InputError("cannot write " + path.string());
        f << content;
    }

private:
    std::string dir_;
    std::ostream& out_;
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string sci(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10e", x);
    return buf;
}

// "2:5975,3:2128" -> {2: 5975, 3: 2128}
std::map<std::size_t, std::uint64_t> parse_counts(const std::string& text) {
    std::map<std::size_t, std::uint64_t> counts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw InputError("counts entry '" + item + "' is not size:count");
        try {
            std::size_t used_r = 0, used_m = 0;
            const auto r_text = item.substr(0, colon), m_text = item.substr(colon + 1);
            const auto r = std::stoul(r_text, &used_r);
            const auto m = std::stoull(m_text, &used_m);
            if (used_r != r_text.size() || used_m != m_text.size()) throw std::invalid_argument(item);
            counts[r] = m;
        } catch (const std::logic_error&) {
            throw InputError("counts entry '" + item + "' is not size:count");
        }
    }
    if (counts.empty()) throw InputError("empty --counts");
    return counts;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

NumericSequence cap_levels(const NumericSequence& p, std::optional<std::size_t> max_edge_size) {
    if (!max_edge_size || p.max_size() <= *max_edge_size) return p;
    std::map<std::size_t, double> kept;
    for (std::size_t r = 1; r <= *max_edge_size; ++r) kept[r] = p[r];
    return NumericSequence(*max_edge_size, kept);
}

// Probability sources shared by the model-driven subcommands.
struct ModelOptions {
    std::optional<std::uint64_t> n;
    std::string counts;
    std::string p_file;

    void add_to(CLI::App* app) {
        app->add_option("--n", n, "Number of vertices");
        app->add_option("--counts", counts, "Edge counts per size, e.g. 2:5975,3:2128 (p_r = m_r / C(n,r))");
        app->add_option("--p", p_file, "Probability sequence JSON (numeric, or power law evaluated at n)");
    }

    bool given() const { return !counts.empty() || !p_file.empty(); }

    std::uint64_t require_n() const {
        if (!n) throw InputError("--n is required");
        return *n;
    }

    NumericSequence numeric(const Globals& g) const {
        const auto nv = require_n();
        if (!counts.empty() && !p_file.empty()) throw InputError("give either --counts or --p, not both");
        if (!counts.empty()) return cap_levels(from_edge_counts(nv, parse_counts(counts)), g.max_edge_size);
        if (p_file.empty()) throw InputError("a probability source is required (--counts or --p)");
        auto seq = prob_sequence_from_json(read_json_file(p_file));
        if (auto* pl = std::get_if<PowerLawSequence>(&seq)) return cap_levels(pl->evaluate(double(nv)), g.max_edge_size);
        return cap_levels(std::get<NumericSequence>(seq), g.max_edge_size);
    }
};

std::uint64_t require_seed(const Globals& g, const std::string& command) {
    if (!g.seed) throw InputError(command + " is randomized and needs --seed");
    return *g.seed;
}

struct Loaded {
    Hypergraph graph;
    std::vector<std::string> names;
    std::size_t lines_read = 0;
    std::size_t duplicates = 0;
    std::size_t dropped_oversize = 0;
};

Loaded load(const std::string& path, const Globals& g) {
    auto data = read_edge_list_file(path);
    Loaded l;
    l.lines_read = data.lines_read;
    l.duplicates = data.duplicate_edges;
    if (!g.max_edge_size) {
        l.graph = std::move(data.graph);
        l.names = std::move(data.vertex_names);
        return l;
    }
    auto cut = truncate(data.graph, *g.max_edge_size);
    l.dropped_oversize = data.graph.num_edges() - cut.graph.num_edges();
    l.graph = std::move(cut.graph);
    for (Vertex v : cut.to_parent) l.names.push_back(data.vertex_names[v]);
    return l;
}

json histogram_json(const std::map<std::size_t, std::size_t>& h) {
    json j = json::object();
    for (auto [key, count] : h) j[std::to_string(key)] = count;
    return j;
}

std::map<std::size_t, std::uint64_t> counts_of(const Hypergraph& h) {
    std::map<std::size_t, std::uint64_t> out;
    for (auto [r, m] : h.edge_count_by_size()) out[r] = m;
    return out;
}

// ---------------------------------------------------------------- ingest

void cmd_ingest(const std::string& input, const Globals& g, Sink& sink) {
    auto l = load(input, g);
    auto prof = profiles(l.graph);
    json j{{"input", input},
           {"n", l.graph.num_vertices()},
           {"m", l.graph.num_edges()},
           {"edges_by_size", histogram_json(prof.size_histogram)},
           {"lines_read", l.lines_read},
           {"duplicate_edges", l.duplicates},
           {"dropped_oversize", l.dropped_oversize},
           {"degree_histogram", histogram_json(prof.degree_histogram)}};
    if (g.max_edge_size) j["max_edge_size"] = *g.max_edge_size;

    std::string report;
    if (g.format == "json") {
        report = dump(j);
    } else {
        std::ostringstream csv;
        csv << "key,value\n"
            << "n," << l.graph.num_vertices() << "\nm," << l.graph.num_edges() << "\nlines_read," << l.lines_read
            << "\nduplicate_edges," << l.duplicates << "\ndropped_oversize," << l.dropped_oversize << '\n';
        for (auto [r, m] : prof.size_histogram) csv << "m_" << r << ',' << m << '\n';
        report = csv.str();
    }
    sink.primary(g.format == "json" ? "ingest.json" : "ingest.csv", report);
    if (sink.to_files()) {
        std::ostringstream map, edges;
        map << "id\tname\n";
        for (std::size_t v = 0; v < l.names.size(); ++v) map << v << '\t' << l.names[v] << '\n';
        write_edge_list(edges, l.graph, l.names);
        sink.file("vertex_map.tsv", map.str());
        sink.file("hypergraph.txt", edges.str());
    }
}

// -------------------------------------------------------------- generate

void cmd_generate(const ModelOptions& model, std::size_t samples, const Globals& g, Sink& sink) {
    const auto seed = require_seed(g, "generate");
    if (!sink.to_files()) throw InputError("generate writes files and needs --out");
    const auto n = model.require_n();
    const auto p = model.numeric(g);
    json manifest{{"n", n}, {"p", to_json(ProbSequence(p))}, {"seed", seed}, {"samples", json::array()}};
    for (std::size_t i = 0; i < samples; ++i) {
        const auto s = derive_seed(seed, i);
        auto h = sample(n, p, s);
        char name[32];
        std::snprintf(name, sizeof name, "sample_%04zu.txt", i);
        std::ostringstream text;
        write_edge_list(text, h);
        sink.file(name, text.str());
        json by_size = json::object();
        for (auto [r, m] : h.edge_count_by_size()) by_size[std::to_string(r)] = m;
        manifest["samples"].push_back({{"file", name}, {"seed", s}, {"edges", h.num_edges()}, {"edges_by_size", by_size}});
    }
    sink.file("manifest.json", dump(manifest));
}

// ------------------------------------------------------------ thresholds

Hypergraph load_pattern(const std::string& path) {
    if (path.empty()) throw InputError("--pattern is required");
    return read_edge_list_file(path).graph;
}

void cmd_thresholds(const std::string& pattern_path, const std::string& p_file, const std::string& mode,
                    const Globals& g, Sink& sink) {
    if (p_file.empty()) throw InputError("--p with a power-law sequence is required");
    auto seq = prob_sequence_from_json(read_json_file(p_file));
    const auto* p = std::get_if<PowerLawSequence>(&seq);
    if (!p) throw InputError("thresholds needs a power-law sequence (\"powerlaw\" member)");
    const auto pattern = load_pattern(pattern_path);

    ContainmentVerdict v;
    if (mode == "strong")
        v = classify_strong(pattern, *p);
    else if (mode == "induced-strong")
        v = classify_strong(pattern, *p, true);
    else if (mode == "weak")
        v = classify_weak(pattern, *p);
    else if (mode == "induced-weak")
        v = classify_induced_weak(pattern, *p);
    else if (mode == "2section")
        v = classify_2section(Graph(pattern), *p);
    else
        throw InputError("unknown mode '" + mode + "'");

    auto j = to_json(v);
    j["mode"] = mode;
    if (g.format == "json") {
        sink.primary("thresholds.json", dump(j));
    } else {
        sink.primary("thresholds.csv", "mode,verdict,exponent,rule\n" + mode + ',' + to_string(v.outcome) + ',' +
                                           v.exponent.to_string() + ",\"" + v.rule + "\"\n");
    }
}

// ----------------------------------------------------------- origination

void warm_weights(std::size_t k, const std::string& cache) {
    if (!cache.empty()) signature_weights_cached(k, cache);
}

void cmd_origination(const ModelOptions& model, std::size_t k, const std::string& weight_mode,
                     const std::string& cache, const Globals& g, Sink& sink) {
    warm_weights(k, cache);
    auto table = origination_distribution(k, model.numeric(g), model.require_n(), weight_mode_from_string(weight_mode));
    if (g.format == "json") {
        sink.primary("origination.json", dump(to_json(table)));
    } else {
        std::ostringstream csv;
        write_origination_csv(csv, table);
        sink.primary("origination.csv", csv.str());
    }
}

// ---------------------------------------------------------------- census

void cmd_census(const std::vector<std::string>& inputs, const ModelOptions& model, std::size_t k,
                const std::string& weight_mode, const std::string& cache, const Globals& g, Sink& sink) {
    warm_weights(k, cache);
    SignatureTally pooled;
    pooled.k = k;
    json theory_source;
    std::optional<NumericSequence> p;
    std::uint64_t n = 0;
    if (model.given()) {
        n = model.require_n();
        p = model.numeric(g);
        theory_source = {{"n", n}, {"p", to_json(ProbSequence(*p))}};
    }
    for (const auto& path : inputs) {
        auto l = load(path, g);
        if (!p) {
            if (inputs.size() > 1) throw InputError("pooling several inputs needs an explicit --n with --counts or --p");
            n = l.graph.num_vertices();
            const auto counts = counts_of(l.graph);
            p = from_edge_counts(n, counts);
            json c = json::object();
            for (auto [r, m] : counts) c[std::to_string(r)] = m;
            theory_source = {{"n", n}, {"counts_from_input", c}};
        }
        pooled += tally_signatures(l.graph, k, {kDefaultCliqueCap, g.parallel});
    }
    const auto theory = origination_distribution(k, *p, n, weight_mode_from_string(weight_mode));
    const auto report = census_from_tally(pooled, theory);

    auto j = to_json(report);
    j["inputs"] = inputs;
    j["theory"] = theory_source;
    if (pooled.total > 0) {
        const auto chi = chi_square_top(pooled, theory);
        j["chi_square_top5"] = {{"statistic", chi.statistic},
                                {"degrees_of_freedom", chi.degrees_of_freedom},
                                {"p_value", chi.p_value},
                                {"bins", chi.bins}};
    }
    if (g.format == "json") {
        sink.primary("census.json", dump(j));
    } else {
        std::ostringstream csv;
        write_census_csv(csv, report);
        sink.primary("census.csv", csv.str());
    }
    std::ostringstream scatter;
    write_rank_scatter(scatter, report);
    sink.file("rank_scatter.csv", scatter.str());
    if (g.format == "csv") sink.file("census.json", dump(j));
}

// ------------------------------------------------------------ clustering

json clustering_entry(const std::string& name, const Hypergraph& h, unsigned threads) {
    auto j = to_json(clustering_report(h, threads));
    j["name"] = name;
    j["n"] = h.num_vertices();
    j["m"] = h.num_edges();
    if (h.num_edges() > 0 && h.is_uniform(2)) {
        auto cc = graph_cc(Graph(h));
        j["graph_C"] = cc.average_local ? json(*cc.average_local) : json(nullptr);
        j["graph_C_prime"] = cc.global ? json(*cc.global) : json(nullptr);
    }
    return j;
}

void cmd_clustering(const std::vector<std::string>& inputs, const ModelOptions& model, std::size_t samples,
                    const Globals& g, Sink& sink) {
    json items = json::array();
    for (const auto& path : inputs) items.push_back(clustering_entry(path, load(path, g).graph, g.parallel));
    if (samples > 0) {
        const auto seed = require_seed(g, "clustering on generated samples");
        const auto n = model.require_n();
        const auto p = model.numeric(g);
        for (std::size_t i = 0; i < samples; ++i) {
            const auto s = derive_seed(seed, i);
            auto entry = clustering_entry("sample_" + std::to_string(i), sample(n, p, s), g.parallel);
            entry["seed"] = s;
            items.push_back(std::move(entry));
        }
    }
    if (items.empty()) throw InputError("clustering needs input files or --samples");
    double sum = 0;
    for (const auto& it : items) sum += it["hc_global"].get<double>();
    json j{{"hypergraphs", items}, {"count", items.size()}, {"mean_hc_global", sum / double(items.size())}};
    if (g.format == "json") {
        sink.primary("clustering.json", dump(j));
    } else {
        std::ostringstream csv;
        csv << "name,hc_global,n_intersecting_pairs,n_nonzero_local\n";
        for (const auto& it : items)
            csv << it["name"].get<std::string>() << ',' << sci(it["hc_global"].get<double>()) << ','
                << it["n_intersecting_pairs"] << ',' << it["n_nonzero_local"] << '\n';
        sink.primary("clustering.csv", csv.str());
        std::ostringstream hist;
        hist << "name,bin_low,bin_high,count\n";
        for (const auto& it : items)
            for (std::size_t b = 0; b < kHistogramBins; ++b)
                hist << it["name"].get<std::string>() << ',' << double(b) / kHistogramBins << ','
                     << double(b + 1) / kHistogramBins << ',' << it["hc_local_histogram"][b] << '\n';
        sink.file("hc_local_histogram.csv", hist.str());
    }
}

// ---------------------------------------------------------- mc-threshold

void cmd_mc_threshold(const std::string& pattern_path, const ModelOptions& model, std::size_t trials,
                      const std::string& kind, const Globals& g, Sink& sink) {
    const auto seed = require_seed(g, "mc-threshold");
    ContainmentKind ck;
    if (kind == "strong")
        ck = ContainmentKind::strong;
    else if (kind == "weak")
        ck = ContainmentKind::weak;
    else
        throw InputError("--kind must be strong or weak");
    const auto pattern = load_pattern(pattern_path);
    const auto n = model.require_n();
    const double freq = presence_frequency(pattern, model.numeric(g), n, trials, seed, ck, g.parallel);
    json j{{"pattern", pattern_path}, {"n", n}, {"trials", trials}, {"kind", kind}, {"seed", seed}, {"frequency", freq}};
    if (g.format == "json")
        sink.primary("mc_threshold.json", dump(j));
    else
        sink.primary("mc_threshold.csv", "n,trials,kind,seed,frequency\n" + std::to_string(n) + ',' +
                                             std::to_string(trials) + ',' + kind + ',' + std::to_string(seed) + ',' +
                                             sci(freq) + '\n');
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Random hypergraph analytics: sampling, thresholds, signature census, clustering", "hypersub"};
    app.fallthrough();
    app.require_subcommand(1);

    Globals g;
    app.add_option("--seed", g.seed, "Seed for randomized subcommands");
    app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--max-edge-size", g.max_edge_size, "Drop edges larger than this (>= 2)")
        ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
    app.add_option("--parallel", g.parallel, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--out", g.out_dir, "Output directory (default: reports on stdout)");

    std::string input, pattern, p_file, mode = "strong", weight_mode = "labelled", cache, kind = "strong";
    std::vector<std::string> inputs;
    std::size_t k = 4, samples = 0, trials = 200;
    ModelOptions model;

    auto* ingest = app.add_subcommand("ingest", "Read an edge list, deduplicate, report size and degree profiles");
    ingest->add_option("input", input, "Edge-list file")->required();

    auto* generate = app.add_subcommand("generate", "Write samples of H(n,p) as edge lists plus a manifest");
    model.add_to(generate);
    generate->add_option("--samples", samples, "Number of samples");

    auto* thresholds = app.add_subcommand("thresholds", "Asymptotic containment verdict for a pattern");
    thresholds->add_option("--pattern", pattern, "Pattern edge list")->required();
    thresholds->add_option("--p", p_file, "Power-law sequence JSON")->required();
    thresholds->add_option("--mode", mode, "Containment notion")
        ->check(CLI::IsMember({"strong", "induced-strong", "weak", "induced-weak", "2section"}));

    auto* census_cmd = app.add_subcommand("census", "K_k signature census of input hypergraphs against theory");
    census_cmd->add_option("inputs", inputs, "Edge-list files (tallies are pooled)")->required();
    census_cmd->add_option("--k", k, "Clique order (3..5)");
    census_cmd->add_option("--weight-mode", weight_mode, "labelled or aut-literal");
    census_cmd->add_option("--weights-cache", cache, "Signature weight cache file");
    model.add_to(census_cmd);

    auto* origination = app.add_subcommand("origination", "Signature origination probabilities for K_k");
    origination->add_option("--k", k, "Clique order (2..5)");
    origination->add_option("--weight-mode", weight_mode, "labelled or aut-literal");
    origination->add_option("--weights-cache", cache, "Signature weight cache file");
    model.add_to(origination);

    auto* clustering = app.add_subcommand("clustering", "Hypergraph clustering coefficients");
    clustering->add_option("inputs", inputs, "Edge-list files");
    clustering->add_option("--samples", samples, "Also evaluate this many samples of H(n,p)");
    model.add_to(clustering);

    auto* mc = app.add_subcommand("mc-threshold", "Monte Carlo presence frequency of a pattern in H(n,p)");
    mc->add_option("--pattern", pattern, "Pattern edge list")->required();
    mc->add_option("--trials", trials, "Number of samples");
    mc->add_option("--kind", kind, "strong or weak")->check(CLI::IsMember({"strong", "weak"}));
    model.add_to(mc);

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        Sink sink(g, out);
        if (ingest->parsed())
            cmd_ingest(input, g, sink);
        else if (generate->parsed())
            cmd_generate(model, samples, g, sink);
        else if (thresholds->parsed())
            cmd_thresholds(pattern, p_file, mode, g, sink);
        else if (census_cmd->parsed())
            cmd_census(inputs, model, k, weight_mode, cache, g, sink);
        else if (origination->parsed())
            cmd_origination(model, k, weight_mode, cache, g, sink);
        else if (clustering->parsed())
            cmd_clustering(inputs, model, samples, g, sink);
        else if (mc->parsed())
            cmd_mc_threshold(pattern, model, trials, kind, g, sink);
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const GuardError& e) {
        err << "guard: " << e.what() << '\n';
        return kExitGuardError;
    } catch (const fs::filesystem_error& e) {
        err << "input error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitOk;
}

}  // namespace hypersub::cli
