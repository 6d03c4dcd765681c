#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sskh/rgpc/error_oracle.hpp"

namespace sskh::cli {

enum class Format { csv, json };

struct Context {
    std::uint64_t seed = 1;
    std::filesystem::path out_dir = ".";
    std::string format = "csv";
    std::vector<std::filesystem::path> written;

    Format table_format() const { return format == "json" ? Format::json : Format::csv; }

    // Atomic write under out_dir; remembers the path for the final listing.
    void write(const std::string& name, const std::string& contents);
    void write_json(const std::string& name, const nlohmann::json& j);
    // CSV text as-is, or converted to a JSON array of row objects; the
    // extension is picked from the format.
    void write_table(const std::string& stem, const std::string& csv);
};

using ContextPtr = std::shared_ptr<Context>;

nlohmann::json csv_to_json(const std::string& csv);
nlohmann::json read_json_file(const std::filesystem::path& p);

// Error table from a file, or from a fresh complete-coverage channel run.
struct OracleSource {
    std::string table;
    std::int64_t modulus = 0;   // 0: inferred
    double sigma = 30.0;
    std::int64_t beta1 = 546;
};
void add_oracle_options(CLI::App* app, OracleSource& src, const std::string& suffix = "");
rgpc::ErrorOracle load_oracle(const OracleSource& src, std::uint64_t seed);

void register_channel(CLI::App& app, const ContextPtr& ctx);
void register_lwlr(CLI::App& app, const ContextPtr& ctx);
void register_prf(CLI::App& app, const ContextPtr& ctx);
void register_setfam(CLI::App& app, const ContextPtr& ctx);
void register_mutinfo(CLI::App& app, const ContextPtr& ctx);

}  // namespace sskh::cli
