#pragma once

// Structural check of the trajectory engine's reach: walks the include
// closure of the engine sources and the CMake link line of its library and
// reports anything that could expose agent ids, health states or the
// ground-truth contact log.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace ppto::testing {

inline std::string read_file(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline std::string strip_comments(const std::string& text)
{
    static const std::regex block(R"(/\*[\s\S]*?\*/)");
    static const std::regex line(R"(//[^\n]*)");
    return std::regex_replace(std::regex_replace(text, block, " "), line, " ");
}

struct PrivacyReport {
    std::vector<std::string> closure; // project headers and sources visited
    std::vector<std::string> violations;
};

inline PrivacyReport scan_engine_boundary(const std::filesystem::path& root)
{
    const std::set<std::string> allowed_headers{
        "ppto/engine/ppto_engine.hpp", "ppto/device/device_store.hpp", "ppto/device/token.hpp",
        "ppto/epidemic/contagion_kernel.hpp", "ppto/rng.hpp",
    };
    const std::vector<std::string> forbidden_names{
        "HealthState", "Individual", "PopulationLedger", "ContactGraph", "Contact", "contagion_step",
        "SimConfig", "owner_of", "known_positive_day",
    };

    PrivacyReport report;
    std::vector<std::filesystem::path> todo{root / "include/ppto/engine/ppto_engine.hpp",
                                            root / "src/engine/ppto_engine.cpp"};
    std::set<std::filesystem::path> seen;
    static const std::regex include_re(R"(#\s*include\s*([<"])([^>"]+)[>"])");

    while (!todo.empty()) {
        const auto file = todo.back();
        todo.pop_back();
        if (!seen.insert(file).second)
            continue;
        const auto rel = std::filesystem::relative(file, root).generic_string();
        report.closure.push_back(rel);
        if (!std::filesystem::exists(file)) {
            report.violations.push_back(rel + ": missing");
            continue;
        }
        const auto code = strip_comments(read_file(file));

        for (std::sregex_iterator it(code.begin(), code.end(), include_re), end; it != end; ++it) {
            const std::string kind = (*it)[1];
            const std::string name = (*it)[2];
            if (name.rfind("ppto/", 0) == 0) {
                if (!allowed_headers.contains(name))
                    report.violations.push_back(rel + ": includes " + name);
                else
                    todo.push_back(root / "include" / name);
            } else if (kind == "<" && name.rfind("absl/", 0) == 0) {
                // container library behind the token router
            } else if (kind == "<" && name.find('/') == std::string::npos && name.find('.') == std::string::npos) {
                // standard library
            } else {
                report.violations.push_back(rel + ": includes " + name);
            }
        }

        for (const auto& n : forbidden_names) {
            const std::regex word("\\b" + n + "\\b");
            if (std::regex_search(code, word))
                report.violations.push_back(rel + ": mentions " + n);
        }
        // The id alias is declared next to the RNG; nothing in the engine may use it.
        if (rel != "include/ppto/rng.hpp" && std::regex_search(code, std::regex(R"(\bAgentId\b)")))
            report.violations.push_back(rel + ": mentions AgentId");
    }

    // Link line of the engine library: device store and kernel only.
    const auto cmake = strip_comments(read_file(root / "CMakeLists.txt"));
    static const std::regex link_re(R"(target_link_libraries\s*\(\s*ppto_engine\b([^)]*)\))");
    std::smatch m;
    if (!std::regex_search(cmake, m, link_re)) {
        report.violations.push_back("CMakeLists.txt: no link line for ppto_engine");
    } else {
        std::istringstream deps(m[1].str());
        std::string dep;
        while (deps >> dep)
            if (dep != "PUBLIC" && dep != "PRIVATE" && dep != "INTERFACE" && dep != "ppto_device" &&
                dep != "ppto_kernel")
                report.violations.push_back("CMakeLists.txt: ppto_engine links " + dep);
    }
    static const std::regex engine_sources(R"(add_library\s*\(\s*ppto_engine\b([^)]*)\))");
    if (std::regex_search(cmake, m, engine_sources)) {
        std::istringstream srcs(m[1].str());
        std::string src;
        while (srcs >> src)
            if (src != "src/engine/ppto_engine.cpp")
                report.violations.push_back("CMakeLists.txt: ppto_engine compiles " + src);
    }
    std::sort(report.closure.begin(), report.closure.end());
    return report;
}

} // namespace ppto::testing
