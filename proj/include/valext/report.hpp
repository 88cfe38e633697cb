#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace valext {

struct CheckRecord {
    enum class Status { pass, fail, unknown };
    std::string name;
    Status status = Status::pass;
    nlohmann::ordered_json detail;  // witnesses, dimensions, digests
    double millis = 0.0;

    static CheckRecord passed(std::string name, nlohmann::ordered_json detail = {});
    static CheckRecord failed(std::string name, nlohmann::ordered_json detail = {});
    static CheckRecord unknown(std::string name, nlohmann::ordered_json detail = {});
};

// Machine-readable run record.  Byte-stable for fixed (version, seed, flags);
// timings are attached only on request so the default output stays stable.
struct Report {
    std::string kind;     // "scenario" | "properties"
    std::string subject;  // scenario or suite name
    nlohmann::ordered_json flags;
    std::uint64_t seed = 0;
    std::vector<CheckRecord> checks;

    std::string verdict() const;  // "pass" | "fail" | "unknown"
    int exit_code() const;        // 0 pass, 1 fail, 2 unknown-only
    nlohmann::ordered_json to_json(bool with_timings = false) const;
    std::string render_text() const;
};

}  // namespace valext
