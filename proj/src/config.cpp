#include "nsmin/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "nsmin/costs.hpp"
#include "nsmin/errors.hpp"

namespace nsmin {

using nlohmann::json;

std::string CostConfig::kind_name() const
{
    switch (kind) {
    case Kind::sparse_learning:
        return "sparse_learning";
    case Kind::modular_stream:
        return "modular_stream";
    case Kind::tabular_stream:
        return "tabular_stream";
    }
    return "modular_stream";
}

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what)
{
    throw ConfigError("config field '" + field + "': " + what);
}

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> known)
{
    const std::set<std::string> allowed(known.begin(), known.end());
    for (const auto& [key, value] : obj.items())
        if (!allowed.contains(key))
            fail(where.empty() ? key : where + "." + key, "unknown key");
}

const json* find(const json& obj, const char* key)
{
    auto it = obj.find(key);
    return it == obj.end() || it->is_null() ? nullptr : &*it;
}

double as_double(const json& v, const std::string& field)
{
    if (!v.is_number())
        fail(field, "expected a number");
    return v.get<double>();
}

long long as_integer(const json& v, const std::string& field)
{
    if (!v.is_number_integer() && !v.is_number_unsigned())
        fail(field, "expected an integer");
    return v.get<long long>();
}

int as_int(const json& v, const std::string& field, long long lo, long long hi)
{
    const long long x = as_integer(v, field);
    if (x < lo || x > hi)
        fail(field, "value " + std::to_string(x) + " outside [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]");
    return static_cast<int>(x);
}

std::string as_string(const json& v, const std::string& field)
{
    if (!v.is_string())
        fail(field, "expected a string");
    return v.get<std::string>();
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p)
{
    const std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

DelaySchedule parse_delay(const json& v, const std::string& field, const std::filesystem::path& base)
{
    if (v.is_number_integer()) {
        const int d = as_int(v, field, 0, 1'000'000'000);
        return d == 0 ? DelaySchedule::none() : DelaySchedule::constant(d);
    }
    if (!v.is_object())
        fail(field, "expected an object with 'kind' or an integer constant delay");
    const json* kind = find(v, "kind");
    if (!kind)
        fail(field + ".kind", "missing");
    const std::string k = as_string(*kind, field + ".kind");
    try {
        if (k == "none") {
            reject_unknown(v, field, {"kind"});
            return DelaySchedule::none();
        }
        if (k == "constant") {
            reject_unknown(v, field, {"kind", "d"});
            const json* d = find(v, "d");
            if (!d)
                fail(field + ".d", "missing");
            return DelaySchedule::constant(as_int(*d, field + ".d", 0, 1'000'000'000));
        }
        if (k == "power") {
            reject_unknown(v, field, {"kind", "c", "gamma"});
            const json* c = find(v, "c");
            const json* g = find(v, "gamma");
            if (!c || !g)
                fail(field, "power delays need 'c' and 'gamma'");
            return DelaySchedule::power(as_double(*c, field + ".c"), as_double(*g, field + ".gamma"));
        }
        if (k == "file") {
            reject_unknown(v, field, {"kind", "path"});
            const json* p = find(v, "path");
            if (!p)
                fail(field + ".path", "missing");
            return DelaySchedule::load(resolve(base, as_string(*p, field + ".path")));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        fail(field, e.what());
    }
    fail(field + ".kind", "unknown delay kind '" + k + "' (expected none, constant, power or file)");
}

Algorithm parse_algo(const json& v, const std::string& field)
{
    try {
        return parse_algorithm(as_string(v, field));
    } catch (const InvalidArgument& e) {
        fail(field, e.what());
    }
}

CostConfig parse_cost(const json& v, const std::filesystem::path& base)
{
    if (!v.is_object())
        fail("cost", "expected an object");
    const json* kind = find(v, "kind");
    if (!kind)
        fail("cost.kind", "missing");
    const std::string k = as_string(*kind, "cost.kind");
    CostConfig out;
    if (k == "sparse_learning") {
        reject_unknown(v, "cost",
                       {"kind", "dim", "samples_per_round", "k", "lambda_reg", "noise_sd", "support_offset",
                        "pilot_rounds"});
        out.kind = CostConfig::Kind::sparse_learning;
        if (const json* x = find(v, "dim"))
            out.dim = as_int(*x, "cost.dim", 1, kMaxGroundSize);
        if (const json* x = find(v, "samples_per_round"))
            out.samples_per_round = as_int(*x, "cost.samples_per_round", 1, 1'000'000);
        if (const json* x = find(v, "k"))
            out.k = as_int(*x, "cost.k", 1, kMaxGroundSize);
        if (const json* x = find(v, "lambda_reg")) {
            out.lambda_reg = as_double(*x, "cost.lambda_reg");
            if (*out.lambda_reg < 0.0)
                fail("cost.lambda_reg", "must be nonnegative");
        }
        if (const json* x = find(v, "noise_sd")) {
            out.noise_sd = as_double(*x, "cost.noise_sd");
            if (out.noise_sd < 0.0)
                fail("cost.noise_sd", "must be nonnegative");
        }
        if (const json* x = find(v, "support_offset"))
            out.support_offset = as_int(*x, "cost.support_offset", 1, kMaxGroundSize);
        if (const json* x = find(v, "pilot_rounds"))
            out.pilot_rounds = as_int(*x, "cost.pilot_rounds", 1, 1'000'000);
        if (out.k > out.dim)
            fail("cost.k", "must not exceed cost.dim");
        if (out.support_offset + out.k - 1 > out.dim)
            fail("cost.support_offset", "block of ones does not fit in cost.dim");
    } else if (k == "modular_stream") {
        reject_unknown(v, "cost", {"kind", "weights", "scale_noise"});
        out.kind = CostConfig::Kind::modular_stream;
        const json* w = find(v, "weights");
        if (!w || !w->is_array() || w->empty())
            fail("cost.weights", "expected a nonempty array of numbers");
        for (std::size_t i = 0; i < w->size(); ++i)
            out.weights.push_back(as_double((*w)[i], "cost.weights[" + std::to_string(i) + "]"));
    } else if (k == "tabular_stream") {
        reject_unknown(v, "cost", {"kind", "fbar", "funder", "scale_noise"});
        out.kind = CostConfig::Kind::tabular_stream;
        const json* f = find(v, "fbar");
        if (!f)
            fail("cost.fbar", "missing table path");
        out.fbar_path = resolve(base, as_string(*f, "cost.fbar"));
        if (const json* g = find(v, "funder"))
            out.funder_path = resolve(base, as_string(*g, "cost.funder"));
    } else {
        fail("cost.kind", "unknown cost kind '" + k +
                              "' (expected sparse_learning, modular_stream or tabular_stream)");
    }
    if (const json* s = find(v, "scale_noise")) {
        out.scale_noise = as_double(*s, "cost.scale_noise");
        if (!(out.scale_noise >= 0.0 && out.scale_noise < 1.0))
            fail("cost.scale_noise", "must lie in [0, 1)");
    }
    return out;
}

int cost_ground_size(const CostConfig& out)
{
    switch (out.kind) {
    case CostConfig::Kind::sparse_learning:
        return out.dim;
    case CostConfig::Kind::modular_stream:
        return static_cast<int>(out.weights.size());
    case CostConfig::Kind::tabular_stream: {
        std::ifstream in(out.fbar_path);
        int n = -1;
        if (!in || !(in >> n))
            fail("cost.fbar", "cannot read ground-set size from " + out.fbar_path.string());
        return n;
    }
    }
    return 0;
}

} // namespace

RunConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir)
{
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object())
        throw ConfigError("config must be a JSON object");
    reject_unknown(root, "",
                   {"algorithm", "n", "T", "seeds", "delay", "gamma", "step_schedule", "step_multiplier", "cost",
                    "L", "alpha_beta", "x1", "checkpoints", "regret", "output_dir", "parallel", "sweep"});

    RunConfig cfg;
    if (const json* a = find(root, "algorithm"))
        cfg.algorithm = parse_algo(*a, "algorithm");
    else
        fail("algorithm", "missing");

    if (const json* t = find(root, "T"))
        cfg.T = as_int(*t, "T", 1, 100'000'000);
    else
        fail("T", "missing");

    if (const json* s = find(root, "seeds")) {
        if (s->is_number_integer()) {
            cfg.seeds = {static_cast<std::uint64_t>(as_integer(*s, "seeds"))};
        } else {
            if (!s->is_array() || s->empty())
                fail("seeds", "expected a nonempty array of integers");
            cfg.seeds.clear();
            for (std::size_t i = 0; i < s->size(); ++i) {
                const long long v = as_integer((*s)[i], "seeds[" + std::to_string(i) + "]");
                if (v < 0)
                    fail("seeds[" + std::to_string(i) + "]", "must be nonnegative");
                cfg.seeds.push_back(static_cast<std::uint64_t>(v));
            }
        }
    }

    if (const json* d = find(root, "delay"))
        cfg.delay = parse_delay(*d, "delay", base_dir);
    if (const json* g = find(root, "gamma")) {
        cfg.gamma = as_double(*g, "gamma");
        if (!(cfg.gamma >= 0.0 && cfg.gamma < 1.0))
            fail("gamma", "delay exponent must lie in [0, 1)");
    }
    if (const json* s = find(root, "step_schedule")) {
        try {
            cfg.step_schedule = parse_step_mode(as_string(*s, "step_schedule"));
        } catch (const InvalidArgument& e) {
            fail("step_schedule", e.what());
        }
    }
    if (const json* m = find(root, "step_multiplier")) {
        cfg.step_multiplier = as_double(*m, "step_multiplier");
        if (!(cfg.step_multiplier > 0.0))
            fail("step_multiplier", "must be positive");
    }

    if (const json* c = find(root, "cost"))
        cfg.cost = parse_cost(*c, base_dir);
    else
        fail("cost", "missing");

    const int inferred_n = cost_ground_size(cfg.cost);
    if (const json* n = find(root, "n")) {
        cfg.n = as_int(*n, "n", 1, kMaxGroundSize);
        if (cfg.n != inferred_n)
            fail("n", "is " + std::to_string(cfg.n) + " but the cost describes a ground set of size " +
                          std::to_string(inferred_n));
    } else {
        cfg.n = inferred_n;
    }
    if (cfg.n < 1 || cfg.n > kMaxGroundSize)
        fail("n", "ground-set size must lie in [1, 64]");

    if (const json* l = find(root, "L")) {
        cfg.L = as_double(*l, "L");
        if (!(*cfg.L > 0.0))
            fail("L", "must be positive");
    }

    if (const json* ab = find(root, "alpha_beta")) {
        if (ab->is_string()) {
            const std::string mode = ab->get<std::string>();
            if (mode == "bruteforce")
                cfg.alpha_beta.mode = AlphaBetaConfig::Mode::bruteforce;
            else if (mode == "submodular_default")
                cfg.alpha_beta.mode = AlphaBetaConfig::Mode::submodular_default;
            else
                fail("alpha_beta", "expected 'bruteforce', 'submodular_default' or {alpha, beta}");
        } else if (ab->is_object()) {
            if (find(*ab, "alpha") || find(*ab, "beta")) {
                reject_unknown(*ab, "alpha_beta", {"alpha", "beta"});
                cfg.alpha_beta.mode = AlphaBetaConfig::Mode::values;
                const json* a = find(*ab, "alpha");
                const json* b = find(*ab, "beta");
                if (!a || !b)
                    fail("alpha_beta", "both 'alpha' and 'beta' are required");
                cfg.alpha_beta.alpha = as_double(*a, "alpha_beta.alpha");
                cfg.alpha_beta.beta = as_double(*b, "alpha_beta.beta");
                if (!(cfg.alpha_beta.alpha > 0.0 && cfg.alpha_beta.alpha <= 1.0))
                    fail("alpha_beta.alpha", "must lie in (0, 1]");
                if (!(cfg.alpha_beta.beta > 0.0 && cfg.alpha_beta.beta <= 1.0))
                    fail("alpha_beta.beta", "must lie in (0, 1]");
            } else {
                reject_unknown(*ab, "alpha_beta", {"mode", "rounds"});
                const json* m = find(*ab, "mode");
                if (!m || as_string(*m, "alpha_beta.mode") != "bruteforce")
                    fail("alpha_beta.mode", "object form supports mode 'bruteforce' only");
                cfg.alpha_beta.mode = AlphaBetaConfig::Mode::bruteforce;
                if (const json* r = find(*ab, "rounds"))
                    cfg.alpha_beta.rounds = as_int(*r, "alpha_beta.rounds", 1, 100'000);
            }
        } else {
            fail("alpha_beta", "expected a string or an object");
        }
    }
    if (cfg.alpha_beta.mode == AlphaBetaConfig::Mode::bruteforce && cfg.n > kMaxWeakDRSize)
        throw CapacityError("config field 'alpha_beta': brute-force weak-DR estimation needs n <= " +
                            std::to_string(kMaxWeakDRSize) + ", got n = " + std::to_string(cfg.n));

    if (const json* x = find(root, "x1")) {
        std::vector<double> x1;
        if (x->is_number()) {
            x1.assign(cfg.n, as_double(*x, "x1"));
        } else if (x->is_array()) {
            for (std::size_t i = 0; i < x->size(); ++i)
                x1.push_back(as_double((*x)[i], "x1[" + std::to_string(i) + "]"));
        } else {
            fail("x1", "expected a number or an array");
        }
        if (static_cast<int>(x1.size()) != cfg.n)
            fail("x1", "has " + std::to_string(x1.size()) + " entries, expected " + std::to_string(cfg.n));
        for (double v : x1)
            if (!(v >= 0.0 && v <= 1.0))
                fail("x1", "entries must lie in [0, 1]");
        cfg.x1 = std::move(x1);
    }

    if (const json* c = find(root, "checkpoints"))
        cfg.checkpoints = as_int(*c, "checkpoints", 1, 1'000'000);
    if (const json* r = find(root, "regret")) {
        if (!r->is_boolean())
            fail("regret", "expected true or false");
        cfg.regret = r->get<bool>();
    }
    if (cfg.regret && cfg.n > kMaxEnumerableSize)
        throw CapacityError("config field 'n': regret accounting needs n <= " +
                            std::to_string(kMaxEnumerableSize) + ", got n = " + std::to_string(cfg.n) +
                            " (set \"regret\": false to run without it)");
    if (const json* o = find(root, "output_dir"))
        cfg.output_dir = resolve(base_dir, as_string(*o, "output_dir"));
    else
        cfg.output_dir = base_dir / "out";
    if (const json* p = find(root, "parallel"))
        cfg.parallel = as_int(*p, "parallel", 1, 1024);

    if (const json* sw = find(root, "sweep")) {
        if (!sw->is_object())
            fail("sweep", "expected an object");
        reject_unknown(*sw, "sweep", {"delays", "algorithms", "step_multipliers"});
        if (const json* ds = find(*sw, "delays")) {
            if (!ds->is_array())
                fail("sweep.delays", "expected an array");
            for (std::size_t i = 0; i < ds->size(); ++i)
                cfg.sweep.delays.push_back(
                    parse_delay((*ds)[i], "sweep.delays[" + std::to_string(i) + "]", base_dir));
        }
        if (const json* as = find(*sw, "algorithms")) {
            if (!as->is_array())
                fail("sweep.algorithms", "expected an array");
            for (std::size_t i = 0; i < as->size(); ++i)
                cfg.sweep.algorithms.push_back(
                    parse_algo((*as)[i], "sweep.algorithms[" + std::to_string(i) + "]"));
        }
        if (const json* ms = find(*sw, "step_multipliers")) {
            if (!ms->is_array())
                fail("sweep.step_multipliers", "expected an array");
            for (std::size_t i = 0; i < ms->size(); ++i) {
                const double m = as_double((*ms)[i], "sweep.step_multipliers[" + std::to_string(i) + "]");
                if (!(m > 0.0))
                    fail("sweep.step_multipliers[" + std::to_string(i) + "]", "must be positive");
                cfg.sweep.step_multipliers.push_back(m);
            }
        }
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.parent_path().empty() ? "." : path.parent_path());
}

} // namespace nsmin
