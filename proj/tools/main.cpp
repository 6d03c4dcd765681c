#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "sskh/common/error.hpp"

namespace {

// Flags from a JSON config object, skipped when already given on the command line.
std::vector<std::string> config_args(const std::string& path, const std::vector<std::string>& argv) {
    const auto j = sskh::cli::read_json_file(path);
    sskh::require(j.is_object(), sskh::ErrorCode::invalid_argument, "config must be a JSON object");
    auto scalar = [](const nlohmann::json& v) {
        return v.is_string() ? v.get<std::string>() : v.dump();
    };
    std::vector<std::string> out;
    for (const auto& [key, value] : j.items()) {
        const std::string flag = "--" + key;
        const bool given = std::any_of(argv.begin(), argv.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
        if (given || value.is_null() || value == false) continue;
        if (value == true) {
            out.push_back(flag);
        } else if (value.is_array()) {
            std::string joined;
            for (std::size_t i = 0; i < value.size(); ++i) joined += (i ? "," : "") + scalar(value[i]);
            out.push_back(flag);
            out.push_back(joined);
        } else {
            out.push_back(flag);
            out.push_back(scalar(value));
        }
    }
    return out;
}

void report_error(const std::string& code, const std::string& message) {
    std::cerr << nlohmann::json{{"error", code}, {"message", message}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    auto ctx = std::make_shared<sskh::cli::Context>();
    CLI::App app{"Star-specific key-homomorphic PRFs from learning with linear regression"};
    app.name("sskh");
    app.require_subcommand(1);
    app.fallthrough();
    std::string config;
    app.add_option("--seed", ctx->seed, "master seed")->capture_default_str();
    app.add_option("--out-dir", ctx->out_dir, "output directory")->capture_default_str();
    app.add_option("--format", ctx->format, "table format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--config", config, "JSON file of flag values");

    sskh::cli::register_channel(app, ctx);
    sskh::cli::register_lwlr(app, ctx);
    sskh::cli::register_prf(app, ctx);
    sskh::cli::register_setfam(app, ctx);
    sskh::cli::register_mutinfo(app, ctx);

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        for (std::size_t i = 0; i + 1 < args.size(); ++i) {
            if (args[i] == "--config") config = args[i + 1];
            else if (args[i].rfind("--config=", 0) == 0) config = args[i].substr(9);
        }
        if (!args.empty() && args.back().rfind("--config=", 0) == 0) config = args.back().substr(9);
        if (!config.empty()) {
            const auto extra = config_args(config, args);
            args.insert(args.end(), extra.begin(), extra.end());
        }
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const sskh::Error& e) {
        report_error(std::string(sskh::to_string(e.code())), e.what());
        return 1;
    } catch (const std::exception& e) {
        report_error("internal", e.what());
        return 1;
    }
    for (const auto& p : ctx->written) std::cout << p.string() << "\n";
    return 0;
}
