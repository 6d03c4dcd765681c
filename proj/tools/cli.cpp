#include "cli.hpp"

#include <charconv>
#include <sstream>

#include "sskh/channel/channel.hpp"
#include "sskh/common/atomic_file.hpp"
#include "sskh/common/error.hpp"
#include "sskh/common/random.hpp"
#include "sskh/rgpc/regression.hpp"

namespace sskh::cli {

void Context::write(const std::string& name, const std::string& contents) {
    const auto path = out_dir / name;
    write_file_atomic(path, contents);
    written.push_back(path);
}

void Context::write_json(const std::string& name, const nlohmann::json& j) {
    write(name, j.dump(2) + "\n");
}

void Context::write_table(const std::string& stem, const std::string& csv) {
    if (table_format() == Format::json)
        write_json(stem + ".json", csv_to_json(csv));
    else
        write(stem + ".csv", csv);
}

namespace {

nlohmann::json cell_value(const std::string& s) {
    std::int64_t i = 0;
    const char* end = s.data() + s.size();
    if (auto [p, ec] = std::from_chars(s.data(), end, i); ec == std::errc() && p == end) return i;
    try {
        std::size_t used = 0;
        const double d = std::stod(s, &used);
        if (used == s.size()) return d;
    } catch (const std::exception&) {
    }
    return s;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

}  // namespace

nlohmann::json csv_to_json(const std::string& csv) {
    std::stringstream in(csv);
    std::string line;
    std::getline(in, line);
    const auto header = split(line);
    auto rows = nlohmann::json::array();
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split(line);
        nlohmann::json row = nlohmann::json::object();
        for (std::size_t i = 0; i < header.size() && i < cells.size(); ++i)
            row[header[i]] = cell_value(cells[i]);
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::json read_json_file(const std::filesystem::path& p) {
    const auto text = read_file(p);
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorCode::io, p.string() + ": " + e.what());
    }
}

void add_oracle_options(CLI::App* app, OracleSource& src, const std::string& suffix) {
    app->add_option("--table" + suffix, src.table, "error table CSV (x,e); omit to simulate one");
    app->add_option("--modulus", src.modulus, "working modulus m (default: table size, else 12289)");
    app->add_option("--sigma", src.sigma, "channel sigma for a simulated table")->capture_default_str();
    app->add_option("--beta1", src.beta1, "slope for a simulated table")->capture_default_str();
}

rgpc::ErrorOracle load_oracle(const OracleSource& src, std::uint64_t seed) {
    if (!src.table.empty()) {
        const auto text = read_file(src.table);
        std::int64_t m = src.modulus;
        if (m <= 0) {
            // One row per residue after the header.
            m = -1;
            std::istringstream in(text);
            for (std::string line; std::getline(in, line);)
                if (!line.empty() && line != "\r") ++m;
            require(m > 0, ErrorCode::invalid_argument, "empty error table");
        }
        return rgpc::error_table_from_csv(text, m);
    }
    const std::int64_t m = src.modulus > 0 ? src.modulus : 12289;
    const auto topo = channel::StarTopology::single_star(2);
    const auto d = channel::simulate_exchange(topo, 0, {Shape::identity, 0, src.beta1, 1.0},
                                              {src.sigma, m}, 1 << 16,
                                              channel::Coverage::complete, seed);
    return rgpc::build_error_oracle(d, rgpc::grid_search_hypothesis(d));
}

}  // namespace sskh::cli
