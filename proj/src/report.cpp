#include "rdpf/report.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace rdpf {

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

void set_if(nlohmann::json& j, const char* key, const std::optional<double>& v) {
    if (v) j[key] = *v;
}

std::optional<double> get_opt(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<double>();
}

}  // namespace

std::string csv_header(std::size_t max_dims) {
    std::ostringstream os;
    os << "command,metric,s1,s2,D,P,R_nats,R_bits,region,iterations,gap_final";
    for (std::size_t i = 0; i < max_dims; ++i)
        os << ",D_" << i << ",P_" << i << ",a_" << i << ",w_" << i;
    os << ",status";
    return os.str();
}

std::string to_csv_row(const OutputRecord& r, std::size_t max_dims) {
    std::ostringstream os;
    os << r.command << ',' << r.metric << ',' << cell(r.s1) << ',' << cell(r.s2) << ','
       << cell(r.dist) << ',' << cell(r.perc) << ',' << cell(r.rate_nats) << ','
       << cell(r.rate_bits) << ',' << r.region << ','
       << (r.iterations ? std::to_string(*r.iterations) : "") << ',' << cell(r.gap_final);
    for (std::size_t i = 0; i < max_dims; ++i) {
        if (i < r.dims.size()) {
            const DimensionRecord& d = r.dims[i];
            os << ',' << format_double(d.dist) << ',' << format_double(d.perc) << ','
               << format_double(d.gain) << ',' << format_double(d.noise_var);
        } else {
            os << ",,,,";
        }
    }
    os << ',' << r.status;
    return os.str();
}

std::string to_csv(const std::vector<OutputRecord>& records) {
    std::size_t max_dims = 0;
    for (const OutputRecord& r : records) max_dims = std::max(max_dims, r.dims.size());
    std::ostringstream os;
    os << "# " << kCsvSchema << '\n' << csv_header(max_dims) << '\n';
    for (const OutputRecord& r : records) os << to_csv_row(r, max_dims) << '\n';
    return os.str();
}

nlohmann::json record_to_json(const OutputRecord& r) {
    nlohmann::json j;
    j["command"] = r.command;
    j["metric"] = r.metric;
    set_if(j, "s1", r.s1);
    set_if(j, "s2", r.s2);
    set_if(j, "D", r.dist);
    set_if(j, "P", r.perc);
    set_if(j, "R_nats", r.rate_nats);
    set_if(j, "R_bits", r.rate_bits);
    j["region"] = r.region;
    if (r.iterations) j["iterations"] = *r.iterations;
    set_if(j, "gap_final", r.gap_final);
    nlohmann::json dims = nlohmann::json::array();
    for (const DimensionRecord& d : r.dims)
        dims.push_back({{"D", d.dist}, {"P", d.perc}, {"a", d.gain}, {"w", d.noise_var}});
    j["per_dimension"] = dims;
    j["status"] = r.status;
    j["inputs"] = r.inputs;
    if (r.trace_gaps) j["trace_gaps"] = *r.trace_gaps;
    return j;
}

nlohmann::json records_to_json(const std::vector<OutputRecord>& records) {
    nlohmann::json j;
    j["schema"] = kJsonSchema;
    nlohmann::json arr = nlohmann::json::array();
    for (const OutputRecord& r : records) arr.push_back(record_to_json(r));
    j["records"] = arr;
    return j;
}

OutputRecord record_from_json(const nlohmann::json& j) {
    OutputRecord r;
    r.command = j.at("command").get<std::string>();
    r.metric = j.at("metric").get<std::string>();
    r.s1 = get_opt(j, "s1");
    r.s2 = get_opt(j, "s2");
    r.dist = get_opt(j, "D");
    r.perc = get_opt(j, "P");
    r.rate_nats = get_opt(j, "R_nats");
    r.rate_bits = get_opt(j, "R_bits");
    r.region = j.value("region", "");
    if (j.contains("iterations") && !j.at("iterations").is_null())
        r.iterations = j.at("iterations").get<long>();
    r.gap_final = get_opt(j, "gap_final");
    if (j.contains("per_dimension"))
        for (const auto& d : j.at("per_dimension"))
            r.dims.push_back({d.at("D").get<double>(), d.at("P").get<double>(),
                              d.at("a").get<double>(), d.at("w").get<double>()});
    r.status = j.value("status", "ok");
    r.inputs = j.value("inputs", nlohmann::json::object());
    if (j.contains("trace_gaps")) r.trace_gaps = j.at("trace_gaps").get<Vec>();
    return r;
}

std::vector<OutputRecord> records_from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::vector<OutputRecord> out;
    if (j.is_object() && j.contains("records")) {
        if (j.value("schema", "") != kJsonSchema)
            throw std::invalid_argument("record file: unknown schema '" + j.value("schema", "") + "'");
        for (const auto& item : j.at("records")) out.push_back(record_from_json(item));
    } else if (j.is_array()) {
        for (const auto& item : j) out.push_back(record_from_json(item));
    } else {
        out.push_back(record_from_json(j));
    }
    return out;
}

}  // namespace rdpf
