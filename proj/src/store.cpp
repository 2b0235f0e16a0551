#include "apsel/store.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace apsel::store {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::uint64_t bswap64(std::uint64_t v) {
    return ((v & 0x00000000000000ffULL) << 56) | ((v & 0x000000000000ff00ULL) << 40) |
           ((v & 0x0000000000ff0000ULL) << 24) | ((v & 0x00000000ff000000ULL) << 8) |
           ((v & 0x000000ff00000000ULL) >> 8) | ((v & 0x0000ff0000000000ULL) >> 24) |
           ((v & 0x00ff000000000000ULL) >> 40) | ((v & 0xff00000000000000ULL) >> 56);
}

std::uint64_t to_le(std::uint64_t v) {
    if constexpr (std::endian::native == std::endian::big) return bswap64(v);
    return v;
}

std::uint64_t to_le_bits(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    return to_le(bits);
}

double from_le_bits(std::uint64_t bits) {
    bits = to_le(bits);
    double v;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
}

void append_u64(std::string& buf, std::uint64_t v) {
    v = to_le(v);
    char raw[8];
    std::memcpy(raw, &v, 8);
    buf.append(raw, 8);
}

std::uint64_t read_u64(const std::string& buf, std::size_t offset) {
    std::uint64_t v;
    std::memcpy(&v, buf.data() + offset, 8);
    return to_le(v);
}

void write_file(const fs::path& p, const std::string& content) {
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + p.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw DataError("short write to " + p.string());
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw DataError("missing file: " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json_file(const fs::path& p) {
    const std::string text = read_file(p);
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw FormatError("malformed JSON: " + p.string());
    return j;
}

// Run-length coding over identical bit patterns: (count u64, value f64)*.
// Best-so-far arrays have long constant tails, and bit-pattern runs make the
// round trip exact by construction.
std::string rle_encode(std::span<const double> values) {
    std::string buf;
    std::size_t i = 0;
    while (i < values.size()) {
        const std::uint64_t bits = to_le_bits(values[i]);
        std::size_t j = i + 1;
        while (j < values.size() && to_le_bits(values[j]) == bits) ++j;
        append_u64(buf, j - i);
        append_u64(buf, bits);
        i = j;
    }
    return buf;
}

std::vector<double> rle_decode(const std::string& buf, std::size_t expected_length) {
    if (buf.size() % 16 != 0) throw FormatError("corrupted RLE payload (size not a multiple of 16)");
    std::vector<double> out;
    out.reserve(expected_length);
    for (std::size_t off = 0; off < buf.size(); off += 16) {
        const std::uint64_t count = read_u64(buf, off);
        const double value = from_le_bits(read_u64(buf, off + 8));
        if (count == 0 || out.size() + count > expected_length)
            throw FormatError("corrupted RLE payload (length header mismatch)");
        out.insert(out.end(), count, value);
    }
    if (out.size() != expected_length)
        throw FormatError("corrupted RLE payload (length header mismatch)");
    return out;
}

std::string raw_encode(std::span<const double> values) {
    std::string buf;
    buf.reserve(values.size() * 8);
    for (double v : values) append_u64(buf, to_le_bits(v));
    return buf;
}

std::vector<double> raw_decode(const std::string& buf, std::size_t expected_length) {
    if (buf.size() != expected_length * 8)
        throw FormatError("corrupted float payload (unexpected size)");
    std::vector<double> out(expected_length);
    for (std::size_t i = 0; i < expected_length; ++i) out[i] = from_le_bits(read_u64(buf, i * 8));
    return out;
}

std::string traj_stem(int fid, int aid) {
    return "f" + std::to_string(fid) + "_a" + std::to_string(aid);
}

json manifest_to_json(const Manifest& m) {
    return json{{"format_version", m.format_version},
                {"dimension", m.dimension},
                {"master_seed", m.master_seed},
                {"total_budget", m.total_budget},
                {"budget_grid_count", m.budget_grid_count},
                {"targets", m.targets},
                {"n_runs", m.n_runs},
                {"algorithm_ids", m.algorithm_ids},
                {"config_hash", m.config_hash}};
}

Manifest manifest_from_json(const json& j) {
    Manifest m;
    try {
        m.format_version = j.at("format_version").get<int>();
        m.dimension = j.at("dimension").get<int>();
        m.master_seed = j.at("master_seed").get<std::uint64_t>();
        m.total_budget = j.at("total_budget").get<std::int64_t>();
        m.budget_grid_count = j.at("budget_grid_count").get<int>();
        m.targets = j.at("targets").get<std::vector<double>>();
        m.n_runs = j.at("n_runs").get<int>();
        m.algorithm_ids = j.at("algorithm_ids").get<std::vector<int>>();
        m.config_hash = j.at("config_hash").get<std::string>();
    } catch (const json::exception& e) {
        throw FormatError(std::string("manifest field error: ") + e.what());
    }
    return m;
}

}  // namespace

eaf::BudgetGrid Manifest::budget_grid() const {
    return eaf::BudgetGrid::equally_spaced(total_budget, budget_grid_count);
}

eaf::TargetGrid Manifest::target_grid() const {
    eaf::TargetGrid g;
    g.thresholds = targets;
    return g;
}

std::string config_hash_hex(const std::string& canonical_json) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical_json) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ExperimentStore ExperimentStore::create(const fs::path& root, Manifest manifest) {
    ExperimentStore s;
    s.root_ = root;
    s.manifest_ = std::move(manifest);
    fs::create_directories(root);
    for (const char* sub : {"traj", "eaf", "features", "portfolios", "reports"})
        fs::create_directories(root / sub);
    write_file(root / "manifest.json", manifest_to_json(s.manifest_).dump(2) + "\n");
    return s;
}

ExperimentStore ExperimentStore::open(const fs::path& root, const std::string& expected_config_hash) {
    if (!exists(root)) throw DataError("no experiment store at " + root.string());
    ExperimentStore s;
    s.root_ = root;
    s.manifest_ = manifest_from_json(parse_json_file(root / "manifest.json"));
    if (s.manifest_.format_version != kFormatVersion)
        throw FormatError("store format version " + std::to_string(s.manifest_.format_version) +
                          " unsupported (expected " + std::to_string(kFormatVersion) + ")");
    if (!expected_config_hash.empty() && s.manifest_.config_hash != expected_config_hash)
        throw ConfigError("store at " + root.string() +
                          " was produced with a different configuration (hash " +
                          s.manifest_.config_hash + " != " + expected_config_hash +
                          "); refusing to reuse it");
    return s;
}

bool ExperimentStore::exists(const fs::path& root) { return fs::exists(root / "manifest.json"); }

void ExperimentStore::put_suite(const suite::Suite& s) const {
    json fns = json::array();
    for (const auto& f : s.functions) {
        fns.push_back(json{{"id", f.id()},
                           {"weights", f.weights()},
                           {"seed", f.seed()},
                           {"x_opt", f.x_opt()}});
    }
    const json doc{{"dimension", s.spec.dimension},
                   {"master_seed", s.spec.master_seed},
                   {"n_functions", s.spec.n_functions},
                   {"train_fraction", s.spec.train_fraction},
                   {"train_ids", s.train_ids},
                   {"test_ids", s.test_ids},
                   {"functions", fns}};
    write_file(root_ / "suite.json", doc.dump(2) + "\n");
}

suite::Suite ExperimentStore::get_suite() const {
    const json doc = parse_json_file(root_ / "suite.json");
    suite::Suite s;
    try {
        s.spec.dimension = doc.at("dimension").get<int>();
        s.spec.master_seed = doc.at("master_seed").get<std::uint64_t>();
        s.spec.n_functions = doc.at("n_functions").get<int>();
        s.spec.train_fraction = doc.at("train_fraction").get<double>();
        s.train_ids = doc.at("train_ids").get<std::vector<int>>();
        s.test_ids = doc.at("test_ids").get<std::vector<int>>();
        for (const auto& jf : doc.at("functions")) {
            s.functions.push_back(suite::GeneratedFunction::from_record(
                jf.at("id").get<int>(), s.spec.dimension, jf.at("seed").get<std::uint64_t>(),
                jf.at("weights").get<std::vector<double>>(),
                jf.at("x_opt").get<std::vector<double>>()));
        }
    } catch (const json::exception& e) {
        throw FormatError(std::string("suite.json field error: ") + e.what());
    }
    return s;
}

bool ExperimentStore::has_suite() const { return fs::exists(root_ / "suite.json"); }

void ExperimentStore::put_trajectories(int function_id, int algorithm_id,
                                       std::span<const optim::RunTrajectory> runs) const {
    const std::string stem = traj_stem(function_id, algorithm_id);
    json index{{"function_id", function_id}, {"algorithm_id", algorithm_id}};
    json jruns = json::array();
    for (const auto& r : runs) {
        const std::string file = stem + "_r" + std::to_string(r.run_index) + ".bin";
        write_file(root_ / "traj" / file, rle_encode(r.best_so_far));
        jruns.push_back(json{{"run_index", r.run_index},
                             {"seed", r.seed},
                             {"length", r.best_so_far.size()},
                             {"encoding", "rle"},
                             {"file", file}});
    }
    index["runs"] = std::move(jruns);
    write_file(root_ / "traj" / (stem + ".json"), index.dump(2) + "\n");
}

std::vector<optim::RunTrajectory> ExperimentStore::get_trajectories(int function_id,
                                                                    int algorithm_id) const {
    const fs::path index_path = root_ / "traj" / (traj_stem(function_id, algorithm_id) + ".json");
    if (!fs::exists(index_path))
        throw DataError("no trajectories for function " + std::to_string(function_id) +
                        ", algorithm " + std::to_string(algorithm_id));
    const json index = parse_json_file(index_path);
    std::vector<optim::RunTrajectory> out;
    try {
        for (const auto& jr : index.at("runs")) {
            optim::RunTrajectory t;
            t.function_id = function_id;
            t.algorithm_id = algorithm_id;
            t.run_index = jr.at("run_index").get<int>();
            t.seed = jr.at("seed").get<std::uint64_t>();
            const auto length = jr.at("length").get<std::size_t>();
            const auto encoding = jr.at("encoding").get<std::string>();
            const std::string payload = read_file(root_ / "traj" / jr.at("file").get<std::string>());
            if (encoding == "rle")
                t.best_so_far = rle_decode(payload, length);
            else if (encoding == "raw")
                t.best_so_far = raw_decode(payload, length);
            else
                throw FormatError("unknown trajectory encoding: " + encoding);
            out.push_back(std::move(t));
        }
    } catch (const json::exception& e) {
        throw FormatError(std::string("trajectory index field error: ") + e.what());
    }
    return out;
}

bool ExperimentStore::has_trajectories(int function_id, int algorithm_id) const {
    return fs::exists(root_ / "traj" / (traj_stem(function_id, algorithm_id) + ".json"));
}

void ExperimentStore::put_eaf(const eaf::EafMatrix& m) const {
    const std::string stem = traj_stem(m.function_id, m.algorithm_id);
    write_file(root_ / "eaf" / (stem + ".bin"), raw_encode(m.values));
    const json side{{"function_id", m.function_id}, {"algorithm_id", m.algorithm_id},
                    {"n_runs", m.n_runs},           {"n_budgets", m.n_budgets},
                    {"n_targets", m.n_targets},     {"budgets", manifest_.budget_grid().budgets},
                    {"targets", manifest_.targets}};
    write_file(root_ / "eaf" / (stem + ".json"), side.dump(2) + "\n");
}

eaf::EafMatrix ExperimentStore::get_eaf(int function_id, int algorithm_id) const {
    const std::string stem = traj_stem(function_id, algorithm_id);
    const fs::path side_path = root_ / "eaf" / (stem + ".json");
    if (!fs::exists(side_path))
        throw DataError("no EAF matrix for function " + std::to_string(function_id) +
                        ", algorithm " + std::to_string(algorithm_id));
    const json side = parse_json_file(side_path);
    eaf::EafMatrix m;
    try {
        m.function_id = side.at("function_id").get<int>();
        m.algorithm_id = side.at("algorithm_id").get<int>();
        m.n_runs = side.at("n_runs").get<int>();
        m.n_budgets = side.at("n_budgets").get<std::size_t>();
        m.n_targets = side.at("n_targets").get<std::size_t>();
    } catch (const json::exception& e) {
        throw FormatError(std::string("EAF sidecar field error: ") + e.what());
    }
    m.values = raw_decode(read_file(root_ / "eaf" / (stem + ".bin")), m.n_budgets * m.n_targets);
    return m;
}

bool ExperimentStore::has_eaf(int function_id, int algorithm_id) const {
    return fs::exists(root_ / "eaf" / (traj_stem(function_id, algorithm_id) + ".json"));
}

eaf::EafTable ExperimentStore::load_eaf_table() const {
    eaf::EafTable table(manifest_.budget_grid(), manifest_.target_grid());
    for (const auto& entry : fs::directory_iterator(root_ / "eaf")) {
        if (entry.path().extension() != ".json") continue;
        const json side = parse_json_file(entry.path());
        table.put(get_eaf(side.at("function_id").get<int>(), side.at("algorithm_id").get<int>()));
    }
    return table;
}

void ExperimentStore::put_features(features::FeatureKind kind,
                                   std::span<const features::FeatureVector> vectors,
                                   std::span<const std::string> names) const {
    std::string csv = "function_id";
    for (const auto& n : names) csv += "," + n;
    csv += "\n";
    std::vector<const features::FeatureVector*> sorted;
    for (const auto& v : vectors) sorted.push_back(&v);
    std::sort(sorted.begin(), sorted.end(),
              [](const auto* a, const auto* b) { return a->function_id < b->function_id; });
    for (const auto* v : sorted) {
        if (v->values.size() != names.size())
            throw UsageError("put_features: header/vector length mismatch");
        csv += std::to_string(v->function_id);
        char buf[40];
        for (double x : v->values) {
            // %.17g keeps the exact double through the text round trip
            std::snprintf(buf, sizeof(buf), ",%.17g", x);
            csv += buf;
        }
        csv += "\n";
    }
    write_file(root_ / "features" / (std::string(feature_kind_name(kind)) + ".csv"), csv);
}

std::vector<features::FeatureVector> ExperimentStore::get_features(features::FeatureKind kind) const {
    const fs::path p = root_ / "features" / (std::string(feature_kind_name(kind)) + ".csv");
    if (!fs::exists(p))
        throw DataError(std::string("no ") + feature_kind_name(kind) +
                        " features stored (run stage incomplete?)");
    std::istringstream in(read_file(p));
    std::string line;
    if (!std::getline(in, line)) throw FormatError("empty feature file: " + p.string());
    std::vector<features::FeatureVector> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        features::FeatureVector v;
        v.kind = kind;
        std::istringstream ls(line);
        std::string cell;
        if (!std::getline(ls, cell, ',')) throw FormatError("bad feature row: " + line);
        try {
            v.function_id = std::stoi(cell);
            while (std::getline(ls, cell, ',')) v.values.push_back(std::stod(cell));
        } catch (const std::exception&) {
            throw FormatError("bad feature row: " + line);
        }
        out.push_back(std::move(v));
    }
    return out;
}

bool ExperimentStore::has_features(features::FeatureKind kind) const {
    return fs::exists(root_ / "features" / (std::string(feature_kind_name(kind)) + ".csv"));
}

void ExperimentStore::put_standardizer(features::FeatureKind kind,
                                       const features::Standardizer& s) const {
    const json doc{{"kind", feature_kind_name(kind)}, {"mean", s.mean}, {"inv_std", s.inv_std}};
    write_file(root_ / "features" /
                   ("standardizer_" + std::string(feature_kind_name(kind)) + ".json"),
               doc.dump(2) + "\n");
}

features::Standardizer ExperimentStore::get_standardizer(features::FeatureKind kind) const {
    const fs::path p =
        root_ / "features" / ("standardizer_" + std::string(feature_kind_name(kind)) + ".json");
    if (!fs::exists(p)) throw DataError("no standardizer stored for kind " +
                                        std::string(feature_kind_name(kind)));
    const json doc = parse_json_file(p);
    features::Standardizer s;
    try {
        s.mean = doc.at("mean").get<std::vector<double>>();
        s.inv_std = doc.at("inv_std").get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw FormatError(std::string("standardizer field error: ") + e.what());
    }
    return s;
}

void ExperimentStore::put_portfolio(const std::string& name, const PortfolioRecord& record) const {
    json pairs = json::array();
    for (const auto& p : record.pf.pairs)
        pairs.push_back(json{{"algorithm", p.algorithm_id}, {"budget", p.budget}});
    const json doc{{"pairs", pairs},
                   {"total_budget", record.pf.total_budget()},
                   {"provenance",
                    {{"method", record.method},
                     {"function_set", record.function_set},
                     {"weights", record.weights}}}};
    write_file(root_ / "portfolios" / (name + ".json"), doc.dump(2) + "\n");
}

PortfolioRecord ExperimentStore::get_portfolio(const std::string& name) const {
    const fs::path p = root_ / "portfolios" / (name + ".json");
    if (!fs::exists(p)) throw DataError("no stored portfolio named " + name);
    const json doc = parse_json_file(p);
    PortfolioRecord r;
    try {
        for (const auto& jp : doc.at("pairs"))
            r.pf.pairs.push_back({jp.at("algorithm").get<int>(), jp.at("budget").get<std::int64_t>()});
        r.method = doc.at("provenance").at("method").get<std::string>();
        r.function_set = doc.at("provenance").at("function_set").get<std::string>();
        r.weights = doc.at("provenance").at("weights").get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw FormatError(std::string("portfolio field error: ") + e.what());
    }
    return r;
}

bool ExperimentStore::has_portfolio(const std::string& name) const {
    return fs::exists(root_ / "portfolios" / (name + ".json"));
}

void ExperimentStore::write_report_text(const std::string& filename,
                                        const std::string& content) const {
    write_file(reports_dir() / filename, content);
}

}  // namespace apsel::store
