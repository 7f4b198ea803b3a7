#include "sunitgap/dataset_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "sunitgap/version.hpp"

namespace sunitgap::io {

namespace {

using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

void write_atomically(const std::string& path, const std::string& content) {
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw domain_error("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out) throw domain_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

ordered_json echo_to_json(const HeaderEcho& echo) {
    ordered_json j = ordered_json::object();
    for (const auto& [k, v] : echo) j[k] = v;
    return j;
}

ordered_json record_to_json(const search::SolutionRecord& r) {
    ordered_json j = ordered_json::object();
    j["x"] = r.x.get_str();
    j["a"] = r.a;
    j["n_value"] = r.n_value.get_str();
    j["delta"] = r.delta.get_str();
    j["spart_value"] = r.spart_value.get_str();
    j["cofactor"] = r.cofactor.get_str();
    j["gpf"] = r.gpf.get_str();
    if (r.ratio)
        j["ratio"] = *r.ratio;
    else
        j["ratio"] = nullptr;
    return j;
}

arith::Int int_field(const ordered_json& j, const char* key, std::size_t line) {
    if (!j.contains(key) || !j[key].is_string())
        throw parse_error(std::string("dataset: missing string field '") + key + "'", line);
    try {
        return arith::Int(j[key].get<std::string>());
    } catch (const std::exception&) {
        throw parse_error(std::string("dataset: bad integer in field '") + key + "'", line);
    }
}

std::string csv_join(const std::vector<std::uint32_t>& v, char sep = ';') {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? std::string(1, sep) : "") << v[i];
    return os.str();
}

std::string num_cell(double v) {
    ordered_json j = v; // shortest round-trip float formatting
    return j.dump();
}

std::string opt_cell(const std::optional<double>& v) {
    if (!v) return "";
    return num_cell(*v);
}

} // namespace

void write_dataset_jsonl(const std::string& path, const search::Dataset& ds, const HeaderEcho& echo) {
    std::ostringstream out;
    ordered_json header = ordered_json::object();
    header["format"] = "sunitgap-dataset";
    header["version"] = tool_version;
    header["id"] = ds.id;
    header["config"] = echo_to_json(echo);
    header["s_primes"] = ds.S.primes();
    header["t_primes"] = ds.T.primes();
    header["window"] = {{"x_max", ds.window.x_max.get_str()},
                        {"exp_max", ds.window.exp_max},
                        {"require_coprime", ds.window.require_coprime},
                        {"require_nonzero", ds.window.require_nonzero},
                        {"budget", ds.window.budget.get_str()}};
    header["skipped_zero_delta"] = ds.skipped_zero_delta;
    header["skipped_noncoprime"] = ds.skipped_noncoprime;
    out << header.dump() << '\n';
    for (const auto& r : ds.records) out << record_to_json(r).dump() << '\n';
    write_atomically(path, out.str());
}

search::Dataset read_dataset_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open dataset " + path);
    std::string line;
    std::size_t lineno = 0;
    search::Dataset ds;

    if (!std::getline(in, line)) return ds; // empty file: empty dataset
    ++lineno;
    try {
        ordered_json h = ordered_json::parse(line);
        if (h.value("format", "") != "sunitgap-dataset")
            throw parse_error("dataset: missing format marker", lineno);
        ds.id = h.value("id", "");
        ds.S = arith::PrimeSet(h.at("s_primes").get<std::vector<std::uint64_t>>());
        ds.T = arith::PrimeSet(h.at("t_primes").get<std::vector<std::uint64_t>>());
        const auto& w = h.at("window");
        ds.window.x_max = arith::Int(w.at("x_max").get<std::string>());
        ds.window.exp_max = w.at("exp_max").get<std::vector<std::uint32_t>>();
        ds.window.require_coprime = w.at("require_coprime").get<bool>();
        ds.window.require_nonzero = w.at("require_nonzero").get<bool>();
        ds.window.budget = arith::Int(w.at("budget").get<std::string>());
        ds.skipped_zero_delta = h.value("skipped_zero_delta", std::size_t{0});
        ds.skipped_noncoprime = h.value("skipped_noncoprime", std::size_t{0});
    } catch (const parse_error&) {
        throw;
    } catch (const std::exception& e) {
        throw parse_error(std::string("dataset header: ") + e.what(), lineno);
    }

    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            ordered_json j = ordered_json::parse(line);
            search::SolutionRecord r;
            r.x = int_field(j, "x", lineno);
            r.a = j.at("a").get<std::vector<std::uint32_t>>();
            r.n_value = int_field(j, "n_value", lineno);
            r.delta = int_field(j, "delta", lineno);
            r.spart_value = int_field(j, "spart_value", lineno);
            r.cofactor = int_field(j, "cofactor", lineno);
            r.gpf = int_field(j, "gpf", lineno);
            if (!j.contains("ratio")) throw parse_error("dataset: missing field 'ratio'", lineno);
            if (!j["ratio"].is_null()) r.ratio = j["ratio"].get<double>();
            ds.records.push_back(std::move(r));
        } catch (const parse_error&) {
            throw;
        } catch (const std::exception& e) {
            throw parse_error(std::string("dataset record: ") + e.what(), lineno);
        }
    }
    return ds;
}

void write_summary_csv(const std::string& path, const search::Dataset& ds, const HeaderEcho& echo) {
    auto s = ds.summary();
    std::ostringstream out;
    out << "# sunitgap " << tool_version << "\n";
    for (const auto& [k, v] : echo) out << "# " << k << " = " << v << "\n";
    out << "records,skipped_zero_delta,skipped_noncoprime,max_ratio,min_one_minus_ratio,min_gpf\n";
    out << s.records << ',' << s.skipped_zero_delta << ',' << s.skipped_noncoprime << ','
        << opt_cell(s.max_ratio) << ',' << opt_cell(s.min_one_minus_ratio) << ','
        << (s.min_gpf ? s.min_gpf->get_str() : "") << '\n';
    write_atomically(path, out.str());
}

void write_report_csv(const std::string& path, const search::Dataset& ds,
                      const bounds::EmpiricalFit* fit, const bounds::GpfCheckReport* gpf,
                      const HeaderEcho& echo) {
    std::ostringstream out;
    out << "# sunitgap " << tool_version << "\n";
    for (const auto& [k, v] : echo) out << "# " << k << " = " << v << "\n";
    if (fit) {
        out << "# fitted_c = " << num_cell(fit->fitted_c) << "\n";
        out << "# fitted_kappa = " << num_cell(fit->fitted_kappa) << "\n";
        out << "# binding_x = " << fit->binding.x.get_str() << "\n";
        out << "# binding_a = " << csv_join(fit->binding.a) << "\n";
    }
    if (gpf && gpf->min_quotient) out << "# min_gpf_quotient = " << num_cell(*gpf->min_quotient) << "\n";
    out << "x,a,delta,spart_value,cofactor,ratio,kappa_needed,gpf,gpf_shape,gpf_quotient,binding\n";
    for (std::size_t i = 0; i < ds.records.size(); ++i) {
        const auto& r = ds.records[i];
        out << r.x.get_str() << ',' << csv_join(r.a) << ',' << r.delta.get_str() << ','
            << r.spart_value.get_str() << ',' << r.cofactor.get_str() << ',' << opt_cell(r.ratio)
            << ',' << opt_cell(r.one_minus_ratio()) << ',' << r.gpf.get_str() << ',';
        if (gpf && i < gpf->rows.size())
            out << num_cell(gpf->rows[i].shape_value) << ',' << num_cell(gpf->rows[i].quotient);
        else
            out << ',';
        bool is_binding = fit && r.x == fit->binding.x && r.a == fit->binding.a;
        out << ',' << (is_binding ? 1 : 0) << '\n';
    }
    write_atomically(path, out.str());
}

std::string summary_block(const search::Dataset& ds) {
    auto s = ds.summary();
    std::ostringstream out;
    out << "records: " << s.records << "\n";
    out << "skipped (delta = 0): " << s.skipped_zero_delta << "\n";
    out << "skipped (x not coprime to T): " << s.skipped_noncoprime << "\n";
    if (s.max_ratio) out << "max ratio: " << opt_cell(s.max_ratio) << "\n";
    if (s.min_one_minus_ratio) out << "min 1-ratio: " << opt_cell(s.min_one_minus_ratio) << "\n";
    if (s.min_gpf) out << "min gpf: " << s.min_gpf->get_str() << "\n";
    return out.str();
}

} // namespace sunitgap::io
