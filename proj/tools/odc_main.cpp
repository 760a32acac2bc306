// odc — organized-complexity toolbox.
//
// One binary, thirteen subcommands: fixture generation, entropy, the
// compression-based K and depth proxies, container pack/unpack, NCD
// matrices and clustering, slow-growth checks, and the evolution
// simulator with its trace analyzer. Structured reports are JSON with an
// embedded run manifest; matrices and trajectories are CSV and Newick
// with the manifest in a `.manifest.json` sidecar. Everything except
// wall-clock timing is bit-reproducible.

#include <charconv>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "odc/bytes.hpp"
#include "odc/codec.hpp"
#include "odc/corpus.hpp"
#include "odc/depth.hpp"
#include "odc/entropy.hpp"
#include "odc/errors.hpp"
#include "odc/evosim.hpp"
#include "odc/kestimate.hpp"
#include "odc/ncd.hpp"
#include "odc/sha256.hpp"
#include "odc/version.hpp"

using nlohmann::json;

namespace {

constexpr const char* kDefaultAlphabetHex = "6162636465666768696a6b6c6d6e6f70";  // 'a'..'p'

std::string fmt_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw odc::io_error("cannot open for writing: " + path);
    out << text;
    if (!out) throw odc::io_error("write failed: " + path);
}

std::string read_text(const std::string& path) {
    odc::ByteObject obj = odc::load_file(path);
    return std::string(obj.bytes.begin(), obj.bytes.end());
}

json base_manifest(const std::string& subcommand, json parameters) {
    return json{{"subcommand", subcommand},
                {"parameters", std::move(parameters)},
                {"tool_version", odc::kToolVersion},
                {"format_version", odc::kFormatVersion},
                {"input_digests", json::object()}};
}

void add_digest(json& manifest, const std::string& name, const odc::Bytes& bytes) {
    manifest["input_digests"][name] = odc::sha256_hex(bytes);
}

// JSON reports go to stdout unless --out was given.
void emit_json(const json& doc, const std::string& out) {
    std::string text = doc.dump(2) + "\n";
    if (out.empty())
        std::cout << text;
    else
        write_text(out, text);
}

std::optional<odc::CodecId> parse_codec(const std::string& name) {
    if (name == "best") return std::nullopt;  // ensemble-best
    auto id = odc::codec_from_name(name);
    if (!id) throw odc::error("unknown codec: " + name);
    return id;
}

json entropy_json(const odc::EntropyReport& rep) {
    return json{{"n", rep.n}, {"bits_per_symbol", rep.bits_per_symbol}, {"total_bits", rep.total_bits}};
}

json kc_json(const odc::ComplexityEstimate& est) {
    json per = json::object();
    for (auto& [id, bits] : est.per_codec) per[std::string(odc::codec_name(id))] = bits;
    return json{{"original_bits", est.original_bits},
                {"per_codec", per},
                {"best_codec", std::string(odc::codec_name(est.best_codec))},
                {"best_bits", est.best_bits},
                {"ratio", est.ratio}};
}

json depth_json(const odc::DepthEstimate& est) {
    json per = json::object();
    for (auto& [id, steps] : est.per_codec_steps) per[std::string(odc::codec_name(id))] = steps;
    json doc{{"best_codec", std::string(odc::codec_name(est.best_codec))},
             {"steps", est.steps},
             {"steps_per_byte", est.steps_per_byte},
             {"per_codec_steps", per},
             {"ambiguous", est.ambiguous}};
    if (est.wallclock) {
        doc["wallclock"] = json{{"median_s", est.wallclock->median_s},
                                {"mad_s", est.wallclock->mad_s},
                                {"repetitions", est.wallclock->repetitions},
                                {"warmups", est.wallclock->warmups}};
    }
    return doc;
}

// ---------------------------------------------------------------- gen

struct GenOpts {
    std::string kind, out;
    std::uint64_t n = 1024;
    std::uint64_t seed = 0;
    unsigned byte_value = 0;
    std::string pattern_hex = "00ff";
    std::uint64_t bits = 1024;
    unsigned rule = 30;
    std::uint64_t width = 257, steps = 256;
    std::string init = "center";
    std::string family_id = "fam";
    unsigned order = 2;
    std::uint64_t transition_seed = 0, doc_seed = 0;
    std::string alphabet_hex = kDefaultAlphabetHex;
};

void run_gen(const GenOpts& o) {
    odc::ByteObject obj;
    if (o.kind == "random") {
        obj = odc::gen_random(o.n, o.seed);
    } else if (o.kind == "constant") {
        if (o.byte_value > 255) throw odc::error("--byte must be 0..255");
        obj = odc::gen_constant(o.n, static_cast<std::uint8_t>(o.byte_value));
    } else if (o.kind == "periodic") {
        obj = odc::gen_periodic(odc::from_hex(o.pattern_hex), o.n);
    } else if (o.kind == "pi") {
        obj = odc::gen_pi_bits(o.bits);
    } else if (o.kind == "ca") {
        auto init = o.init == "center" ? odc::CaInit::SingleCenter : odc::CaInit::SeededRandomRow;
        obj = odc::gen_ca(o.rule, o.width, o.steps, init, o.seed);
    } else {  // family; the kind list is enforced at parse time
        odc::FamilySpec spec{o.family_id, int(o.order), o.transition_seed,
                             odc::from_hex(o.alphabet_hex)};
        obj = odc::gen_family(spec, o.n, o.doc_seed);
    }
    odc::save_file(o.out, obj.bytes);

    json params = json::object();
    params["kind"] = o.kind;
    for (auto& [k, v] : obj.provenance.params) params[k] = v;
    json man = base_manifest("gen", params);
    json sidecar{{"manifest", man}, {"output_sha256", odc::sha256_hex(obj.bytes)}};
    write_text(o.out + ".manifest.json", sidecar.dump(2) + "\n");
}

// ------------------------------------------- entropy / kc / depth / report

struct FileReportOpts {
    std::string in, out;
    unsigned reps = 0, warmups = 1;  // depth only; reps > 0 requests wall-clock
};

void run_entropy(const FileReportOpts& o) {
    odc::ByteObject obj = odc::load_file(o.in);
    json doc = entropy_json(odc::shannon_entropy(obj.bytes));
    json man = base_manifest("entropy", json{{"in", o.in}});
    add_digest(man, o.in, obj.bytes);
    doc["manifest"] = man;
    emit_json(doc, o.out);
}

void run_kc(const FileReportOpts& o) {
    odc::ByteObject obj = odc::load_file(o.in);
    json doc = kc_json(odc::k_estimate(obj.bytes));
    json man = base_manifest("kc", json{{"in", o.in}});
    add_digest(man, o.in, obj.bytes);
    doc["manifest"] = man;
    emit_json(doc, o.out);
}

void run_depth(const FileReportOpts& o) {
    odc::ByteObject obj = odc::load_file(o.in);
    odc::DepthEstimate est;
    if (o.reps > 0) {
        odc::TimingProtocol timing{o.warmups, o.reps};
        est = odc::depth_estimate(obj.bytes, timing);
    } else {
        est = odc::depth_estimate(obj.bytes);
    }
    json doc = depth_json(est);
    json params{{"in", o.in}};
    if (o.reps > 0) {
        params["reps"] = o.reps;
        params["warmups"] = o.warmups;
    }
    json man = base_manifest("depth", params);
    add_digest(man, o.in, obj.bytes);
    doc["manifest"] = man;
    emit_json(doc, o.out);
}

struct ReportOpts {
    std::vector<std::string> inputs;
    std::string out;
};

void run_report(const ReportOpts& o) {
    json files = json::array();
    json man = base_manifest("report", json{{"in", o.inputs}});
    for (const std::string& path : o.inputs) {
        odc::ByteObject obj = odc::load_file(path);
        add_digest(man, path, obj.bytes);
        files.push_back(json{{"path", path},
                             {"label", obj.label},
                             {"n_bytes", obj.size()},
                             {"entropy", entropy_json(odc::shannon_entropy(obj.bytes))},
                             {"kc", kc_json(odc::k_estimate(obj.bytes))},
                             {"depth", depth_json(odc::depth_estimate(obj.bytes))}});
    }
    emit_json(json{{"files", files}, {"manifest", man}}, o.out);
}

// ---------------------------------------------------------- pack / unpack

struct PackOpts {
    std::string in, out, codec = "lz";
};

void run_pack(const PackOpts& o) {
    auto id = parse_codec(o.codec);
    odc::ByteObject obj = odc::load_file(o.in);
    odc::Bytes container;
    std::string used;
    if (id) {
        container = odc::compress(obj.bytes, *id);
        used = o.codec;
    } else {  // --codec best: smallest container, registry order breaking ties
        auto est = odc::k_estimate(obj.bytes);
        container = odc::compress(obj.bytes, est.best_codec);
        used = std::string(odc::codec_name(est.best_codec));
    }
    odc::save_file(o.out, container);
    json man = base_manifest("pack", json{{"in", o.in}, {"codec", o.codec}});
    add_digest(man, o.in, obj.bytes);
    json sidecar{{"manifest", man},
                 {"codec", used},
                 {"container_bytes", container.size()},
                 {"output_sha256", odc::sha256_hex(container)}};
    write_text(o.out + ".manifest.json", sidecar.dump(2) + "\n");
}

struct UnpackOpts {
    std::string in, out;
};

void run_unpack(const UnpackOpts& o) {
    odc::ByteObject container = odc::load_file(o.in);
    odc::ContainerInfo info = odc::parse_container(container.bytes);
    odc::DecodeResult res = odc::decompress(container.bytes);
    odc::save_file(o.out, res.bytes);
    json man = base_manifest("unpack", json{{"in", o.in}, {"out", o.out}});
    add_digest(man, o.in, container.bytes);
    emit_json(json{{"codec", std::string(odc::codec_name(info.codec))},
                   {"original_length", info.original_len},
                   {"steps", res.steps},
                   {"manifest", man}},
              "");
}

// ------------------------------------------------- ncd / matrix / cluster

struct NcdOpts {
    std::string a, b, codec = "lz", out;
};

void run_ncd(const NcdOpts& o) {
    auto id = parse_codec(o.codec);
    odc::ByteObject x = odc::load_file(o.a);
    odc::ByteObject y = odc::load_file(o.b);
    double v = odc::ncd(x, y, id);
    json man = base_manifest("ncd", json{{"a", o.a}, {"b", o.b}, {"codec", o.codec}});
    add_digest(man, o.a, x.bytes);
    add_digest(man, o.b, y.bytes);
    emit_json(json{{"a", x.label}, {"b", y.label}, {"codec", o.codec}, {"ncd", v}, {"manifest", man}},
              o.out);
}

struct MatrixOpts {
    std::vector<std::string> inputs;
    std::string codec = "lz", out;
};

std::vector<odc::ByteObject> load_objects(const std::vector<std::string>& paths, json& man) {
    std::vector<odc::ByteObject> objects;
    for (const std::string& path : paths) {
        objects.push_back(odc::load_file(path));
        add_digest(man, path, objects.back().bytes);
    }
    return objects;
}

std::string matrix_csv(const odc::DistanceMatrix& m) {
    std::ostringstream csv;
    csv << "label";
    for (const std::string& l : m.labels) csv << "," << l;
    csv << "\n";
    for (std::size_t i = 0; i < m.labels.size(); ++i) {
        csv << m.labels[i];
        for (double v : m.values[i]) csv << "," << fmt_double(v);
        csv << "\n";
    }
    return csv.str();
}

void run_matrix(const MatrixOpts& o) {
    auto id = parse_codec(o.codec);
    json man = base_manifest("matrix", json{{"in", o.inputs}, {"codec", o.codec}});
    auto objects = load_objects(o.inputs, man);
    odc::DistanceMatrix m = odc::distance_matrix(objects, id);
    write_text(o.out, matrix_csv(m));
    write_text(o.out + ".manifest.json", json{{"manifest", man}}.dump(2) + "\n");
}

struct ClusterOpts {
    std::vector<std::string> inputs;
    std::string codec = "lz", out_tree, out_assignments;
    std::size_t k = 0;
};

void run_cluster(const ClusterOpts& o) {
    auto id = parse_codec(o.codec);
    json man = base_manifest(
        "cluster", json{{"in", o.inputs}, {"codec", o.codec}, {"k", o.k}});
    auto objects = load_objects(o.inputs, man);
    odc::DistanceMatrix m = odc::distance_matrix(objects, id);
    odc::Dendrogram d = odc::cluster(m);
    std::string newick = odc::to_newick(d);
    auto clusters = odc::cut_clusters(d, o.k);

    write_text(o.out_tree, newick + "\n");
    write_text(o.out_tree + ".manifest.json", json{{"manifest", man}}.dump(2) + "\n");

    json merges = json::array();
    for (const odc::Merge& merge : d.merges)
        merges.push_back(json{{"left", merge.left}, {"right", merge.right}, {"height", merge.height}});
    emit_json(json{{"k", o.k},
                   {"clusters", clusters},
                   {"merges", merges},
                   {"newick", newick},
                   {"manifest", man}},
              o.out_assignments);
}

// ------------------------------------------------------------ slowgrowth

struct SlowGrowthOpts {
    std::string in, out;
    std::uint64_t bound = 0;
};

void run_slowgrowth(const SlowGrowthOpts& o) {
    odc::ByteObject obj = odc::load_file(o.in);
    json parsed;
    try {
        parsed = json::parse(obj.bytes.begin(), obj.bytes.end());
    } catch (const json::exception& e) {
        throw odc::format_error(o.in + " is not valid JSON: " + e.what());
    }
    if (!parsed.is_array()) throw odc::format_error(o.in + ": expected a JSON array of step counts");
    std::vector<std::uint64_t> steps;
    for (const json& v : parsed) {
        if (!v.is_number_unsigned()) throw odc::format_error(o.in + ": step counts must be non-negative integers");
        steps.push_back(v.get<std::uint64_t>());
    }
    odc::SlowGrowthReport rep = odc::slow_growth_check(steps, o.bound);
    json man = base_manifest("slowgrowth", json{{"in", o.in}, {"bound", o.bound}});
    add_digest(man, o.in, obj.bytes);
    emit_json(json{{"bound", rep.bound},
                   {"deltas", rep.deltas},
                   {"max_delta", rep.max_delta},
                   {"violations", rep.violations},
                   {"manifest", man}},
              o.out);
}

// -------------------------------------------------------- evolve / analyze

struct EvolveOpts {
    std::string mode = "cumulative", out;
    std::uint64_t genome_length = 1024, population = 2, generations = 1, sample_every = 1;
    std::uint64_t seed = 0, transition_seed = 0, doc_seed = 0;
    double rate = 1.0;
    std::string family_id = "target";
    unsigned order = 2;
    std::string alphabet_hex = kDefaultAlphabetHex;
};

odc::EvoConfig evo_config(const EvolveOpts& o) {
    odc::EvoConfig cfg;
    cfg.mode = o.mode == "cumulative" ? odc::EvoMode::Cumulative : odc::EvoMode::Memoryless;
    cfg.genome_length = o.genome_length;
    cfg.target_family = odc::FamilySpec{o.family_id, int(o.order), o.transition_seed,
                                        odc::from_hex(o.alphabet_hex)};
    cfg.target_doc_seed = o.doc_seed;
    cfg.population = o.population;
    cfg.mutation_rate = o.rate;
    cfg.generations = o.generations;
    cfg.sample_every = o.sample_every;
    cfg.seed = o.seed;
    return cfg;
}

void run_evolve(const EvolveOpts& o) {
    odc::EvoConfig cfg = evo_config(o);
    odc::EvolutionTrace trace = odc::run_evolution(cfg);

    json header{{"type", "config"},
                {"mode", o.mode},
                {"genome_length", cfg.genome_length},
                {"population", cfg.population},
                {"mutation_rate", cfg.mutation_rate},
                {"generations", cfg.generations},
                {"sample_every", cfg.sample_every},
                {"seed", cfg.seed},
                {"family",
                 json{{"family_id", cfg.target_family.family_id},
                      {"order", cfg.target_family.order},
                      {"transition_seed", cfg.target_family.transition_seed},
                      {"alphabet_hex", odc::to_hex(cfg.target_family.alphabet)}}},
                {"doc_seed", cfg.target_doc_seed},
                {"target_sha256", odc::sha256_hex(trace.target)},
                {"tool_version", odc::kToolVersion},
                {"format_version", odc::kFormatVersion}};
    std::ostringstream out;
    out << header.dump() << "\n";
    for (const odc::TraceSample& s : trace.samples) {
        out << json{{"type", "sample"},
                    {"generation", s.generation},
                    {"best_fitness", s.best_fitness},
                    {"mean_fitness", s.mean_fitness},
                    {"best_genome_hex", odc::to_hex(s.best_genome)}}
                   .dump()
            << "\n";
    }
    write_text(o.out, out.str());
}

odc::EvolutionTrace read_trace(const std::string& path) {
    std::istringstream in(read_text(path));
    std::string line;
    std::size_t lineno = 0;
    odc::EvolutionTrace trace;
    bool have_config = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw odc::format_error(path + ":" + std::to_string(lineno) +
                                    ": invalid JSON: " + e.what());
        }
        std::string type = j.at("type").get<std::string>();
        if (type == "config") {
            if (have_config) throw odc::format_error(path + ": duplicate config line");
            have_config = true;
            EvolveOpts o;
            o.mode = j.at("mode").get<std::string>();
            if (o.mode != "cumulative" && o.mode != "memoryless")
                throw odc::format_error(path + ": unknown mode " + o.mode);
            o.genome_length = j.at("genome_length").get<std::uint64_t>();
            o.population = j.at("population").get<std::uint64_t>();
            o.rate = j.at("mutation_rate").get<double>();
            o.generations = j.at("generations").get<std::uint64_t>();
            o.sample_every = j.at("sample_every").get<std::uint64_t>();
            o.seed = j.at("seed").get<std::uint64_t>();
            const json& fam = j.at("family");
            o.family_id = fam.at("family_id").get<std::string>();
            o.order = fam.at("order").get<unsigned>();
            o.transition_seed = fam.at("transition_seed").get<std::uint64_t>();
            o.alphabet_hex = fam.at("alphabet_hex").get<std::string>();
            o.doc_seed = j.at("doc_seed").get<std::uint64_t>();
            trace.config = evo_config(o);
            trace.target = odc::gen_family(trace.config.target_family, trace.config.genome_length,
                                           trace.config.target_doc_seed)
                               .bytes;
            std::string expect = j.at("target_sha256").get<std::string>();
            if (odc::sha256_hex(trace.target) != expect)
                throw odc::format_error(path + ": target digest mismatch — trace was produced "
                                               "with a different generator");
        } else if (type == "sample") {
            if (!have_config) throw odc::format_error(path + ": sample before config line");
            odc::TraceSample s;
            s.generation = j.at("generation").get<std::uint64_t>();
            s.best_fitness = j.at("best_fitness").get<double>();
            s.mean_fitness = j.at("mean_fitness").get<double>();
            s.best_genome = odc::from_hex(j.at("best_genome_hex").get<std::string>());
            trace.samples.push_back(std::move(s));
        } else {
            throw odc::format_error(path + ": unknown line type " + type);
        }
    }
    if (!have_config) throw odc::format_error(path + ": missing config line");
    return trace;
}

struct AnalyzeOpts {
    std::string in, out;
    std::uint64_t bound = 0;  // 0 = calibrate automatically
};

void run_analyze(const AnalyzeOpts& o) {
    odc::ByteObject raw = odc::load_file(o.in);
    odc::EvolutionTrace trace = read_trace(o.in);
    std::optional<std::uint64_t> bound;
    if (o.bound > 0) bound = o.bound;
    odc::ComplexityTrajectory traj = odc::analyze_trace(trace, bound);

    std::ostringstream csv;
    csv << "generation,fitness,k_ratio,k_best_codec,k_best_bits,depth_steps,"
           "depth_steps_per_byte,depth_best_codec,depth_delta,violation\n";
    for (std::size_t i = 0; i < traj.points.size(); ++i) {
        const odc::TrajectoryPoint& p = traj.points[i];
        std::uint64_t delta = i ? traj.slow_growth.deltas[i - 1] : 0;
        bool violation = i && delta > traj.slow_growth.bound;
        csv << p.generation << "," << fmt_double(p.fitness) << "," << fmt_double(p.k.ratio) << ","
            << odc::codec_name(p.k.best_codec) << "," << p.k.best_bits << "," << p.depth.steps
            << "," << fmt_double(p.depth.steps_per_byte) << "," << odc::codec_name(p.depth.best_codec)
            << "," << delta << "," << (violation ? 1 : 0) << "\n";
    }
    write_text(o.out, csv.str());

    json man = base_manifest("analyze", json{{"in", o.in}, {"bound", o.bound}});
    add_digest(man, o.in, raw.bytes);
    json sidecar{{"manifest", man},
                 {"slow_growth",
                  json{{"bound", traj.slow_growth.bound},
                       {"max_delta", traj.slow_growth.max_delta},
                       {"deltas", traj.slow_growth.deltas},
                       {"violations", traj.slow_growth.violations}}}};
    write_text(o.out + ".manifest.json", sidecar.dump(2) + "\n");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"organized-complexity measures: entropy, compression-based K and depth proxies, "
                 "NCD clustering, and a cumulative-vs-memoryless evolution simulator"};
    app.require_subcommand(1);
    std::function<void()> action;

    // gen
    GenOpts gen;
    auto* cgen = app.add_subcommand("gen", "generate a fixture file");
    cgen->add_option("kind", gen.kind, "fixture kind")
        ->required()
        ->check(CLI::IsMember({"random", "constant", "periodic", "pi", "ca", "family"}));
    cgen->add_option("--out", gen.out, "output file")->required();
    cgen->add_option("--n", gen.n, "length in bytes");
    cgen->add_option("--seed", gen.seed, "seed");
    cgen->add_option("--byte", gen.byte_value, "constant: byte value");
    cgen->add_option("--pattern-hex", gen.pattern_hex, "periodic: repeating pattern, hex");
    cgen->add_option("--bits", gen.bits, "pi: number of fraction bits");
    cgen->add_option("--rule", gen.rule, "ca: elementary rule 0..255");
    cgen->add_option("--width", gen.width, "ca: row width in cells");
    cgen->add_option("--steps", gen.steps, "ca: evolved rows");
    cgen->add_option("--init", gen.init, "ca: initial row")
        ->check(CLI::IsMember({"center", "random"}));
    cgen->add_option("--family-id", gen.family_id, "family: identifier");
    cgen->add_option("--order", gen.order, "family: Markov order");
    cgen->add_option("--alphabet-hex", gen.alphabet_hex, "family: alphabet bytes, hex");
    cgen->add_option("--transition-seed", gen.transition_seed, "family: transition seed");
    cgen->add_option("--doc-seed", gen.doc_seed, "family: document seed");
    cgen->callback([&] { action = [&] { run_gen(gen); }; });

    // entropy / kc / depth
    FileReportOpts entropy_o, kc_o, depth_o;
    auto* centropy = app.add_subcommand("entropy", "Shannon entropy of a file");
    centropy->add_option("--in", entropy_o.in, "input file")->required();
    centropy->add_option("--out", entropy_o.out, "write JSON here instead of stdout");
    centropy->callback([&] { action = [&] { run_entropy(entropy_o); }; });

    auto* ckc = app.add_subcommand("kc", "complexity proxy: ensemble-best container size");
    ckc->add_option("--in", kc_o.in, "input file")->required();
    ckc->add_option("--out", kc_o.out, "write JSON here instead of stdout");
    ckc->callback([&] { action = [&] { run_kc(kc_o); }; });

    auto* cdepth = app.add_subcommand("depth", "depth proxy: decompression steps of best container");
    cdepth->add_option("--in", depth_o.in, "input file")->required();
    cdepth->add_option("--out", depth_o.out, "write JSON here instead of stdout");
    cdepth->add_option("--reps", depth_o.reps, "wall-clock repetitions (0 = no timing)");
    cdepth->add_option("--warmups", depth_o.warmups, "wall-clock warmup runs");
    cdepth->callback([&] { action = [&] { run_depth(depth_o); }; });

    // pack / unpack
    PackOpts pack_o;
    auto* cpack = app.add_subcommand("pack", "compress a file into a container");
    cpack->add_option("--in", pack_o.in, "input file")->required();
    cpack->add_option("--out", pack_o.out, "container output file")->required();
    cpack->add_option("--codec", pack_o.codec, "literal|rle|lz|bwt-chain|best");
    cpack->callback([&] { action = [&] { run_pack(pack_o); }; });

    UnpackOpts unpack_o;
    auto* cunpack = app.add_subcommand("unpack", "decompress a container");
    cunpack->add_option("--in", unpack_o.in, "container file")->required();
    cunpack->add_option("--out", unpack_o.out, "decoded output file")->required();
    cunpack->callback([&] { action = [&] { run_unpack(unpack_o); }; });

    // ncd / matrix / cluster
    NcdOpts ncd_o;
    auto* cncd = app.add_subcommand("ncd", "normalized compression distance of two files");
    cncd->add_option("--a", ncd_o.a, "first file")->required();
    cncd->add_option("--b", ncd_o.b, "second file")->required();
    cncd->add_option("--codec", ncd_o.codec, "codec name or 'best'");
    cncd->add_option("--out", ncd_o.out, "write JSON here instead of stdout");
    cncd->callback([&] { action = [&] { run_ncd(ncd_o); }; });

    MatrixOpts matrix_o;
    auto* cmatrix = app.add_subcommand("matrix", "pairwise NCD matrix as CSV");
    cmatrix->add_option("--in", matrix_o.inputs, "input files (two or more)")->required();
    cmatrix->add_option("--codec", matrix_o.codec, "codec name or 'best'");
    cmatrix->add_option("--out", matrix_o.out, "CSV output file")->required();
    cmatrix->callback([&] { action = [&] { run_matrix(matrix_o); }; });

    ClusterOpts cluster_o;
    auto* ccluster = app.add_subcommand("cluster", "average-linkage clustering of input files");
    ccluster->add_option("--in", cluster_o.inputs, "input files (two or more)")->required();
    ccluster->add_option("--codec", cluster_o.codec, "codec name or 'best'");
    ccluster->add_option("--k", cluster_o.k, "cluster count for the cut")->required();
    ccluster->add_option("--out-tree", cluster_o.out_tree, "Newick output file")->required();
    ccluster->add_option("--out-assignments", cluster_o.out_assignments,
                         "assignments JSON (stdout if omitted)");
    ccluster->callback([&] { action = [&] { run_cluster(cluster_o); }; });

    // slowgrowth
    SlowGrowthOpts slow_o;
    auto* cslow = app.add_subcommand("slowgrowth", "check a step-count sequence for depth jumps");
    cslow->add_option("--in", slow_o.in, "JSON array of step counts")->required();
    cslow->add_option("--bound", slow_o.bound, "max allowed per-step increase")->required();
    cslow->add_option("--out", slow_o.out, "write JSON here instead of stdout");
    cslow->callback([&] { action = [&] { run_slowgrowth(slow_o); }; });

    // evolve / analyze
    EvolveOpts evolve_o;
    auto* cevolve = app.add_subcommand("evolve", "run the evolution simulator, write a JSONL trace");
    cevolve->add_option("--mode", evolve_o.mode, "search mode")
        ->check(CLI::IsMember({"cumulative", "memoryless"}));
    cevolve->add_option("--genome-length", evolve_o.genome_length, "genome bytes");
    cevolve->add_option("--population", evolve_o.population, "genomes per generation");
    cevolve->add_option("--rate", evolve_o.rate, "expected mutated bytes per offspring");
    cevolve->add_option("--generations", evolve_o.generations, "generation count");
    cevolve->add_option("--sample-every", evolve_o.sample_every, "sampling stride");
    cevolve->add_option("--seed", evolve_o.seed, "simulation seed");
    cevolve->add_option("--family-id", evolve_o.family_id, "target family id");
    cevolve->add_option("--order", evolve_o.order, "target Markov order");
    cevolve->add_option("--alphabet-hex", evolve_o.alphabet_hex, "target alphabet, hex");
    cevolve->add_option("--transition-seed", evolve_o.transition_seed, "target transition seed");
    cevolve->add_option("--doc-seed", evolve_o.doc_seed, "target document seed");
    cevolve->add_option("--out", evolve_o.out, "trace output file (JSON lines)")->required();
    cevolve->callback([&] { action = [&] { run_evolve(evolve_o); }; });

    AnalyzeOpts analyze_o;
    auto* canalyze = app.add_subcommand("analyze", "K/depth trajectory of a trace, as CSV");
    canalyze->add_option("--in", analyze_o.in, "trace file from evolve")->required();
    canalyze->add_option("--bound", analyze_o.bound,
                         "slow-growth bound (0 = calibrate on the target)");
    canalyze->add_option("--out", analyze_o.out, "CSV output file")->required();
    canalyze->callback([&] { action = [&] { run_analyze(analyze_o); }; });

    // report
    ReportOpts report_o;
    auto* creport = app.add_subcommand("report", "entropy + kc + depth for a set of files");
    creport->add_option("--in", report_o.inputs, "input files")->required();
    creport->add_option("--out", report_o.out, "write JSON here instead of stdout");
    creport->callback([&] { action = [&] { run_report(report_o); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage problems are exit 1, --help is success
    }

    try {
        action();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
