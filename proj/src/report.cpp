#include "valext/report.hpp"

#include <sstream>

namespace valext {

CheckRecord CheckRecord::passed(std::string name, nlohmann::ordered_json detail) {
    return CheckRecord{std::move(name), Status::pass, std::move(detail), 0.0};
}

CheckRecord CheckRecord::failed(std::string name, nlohmann::ordered_json detail) {
    return CheckRecord{std::move(name), Status::fail, std::move(detail), 0.0};
}

CheckRecord CheckRecord::unknown(std::string name, nlohmann::ordered_json detail) {
    return CheckRecord{std::move(name), Status::unknown, std::move(detail), 0.0};
}

namespace {

const char* status_str(CheckRecord::Status s) {
    switch (s) {
        case CheckRecord::Status::pass: return "pass";
        case CheckRecord::Status::fail: return "fail";
        case CheckRecord::Status::unknown: return "unknown";
    }
    return "?";
}

}  // namespace

std::string Report::verdict() const {
    bool any_unknown = false;
    for (const auto& c : checks) {
        if (c.status == CheckRecord::Status::fail) return "fail";
        if (c.status == CheckRecord::Status::unknown) any_unknown = true;
    }
    return any_unknown ? "unknown" : "pass";
}

int Report::exit_code() const {
    std::string v = verdict();
    if (v == "pass") return 0;
    if (v == "fail") return 1;
    return 2;
}

nlohmann::ordered_json Report::to_json(bool with_timings) const {
    nlohmann::ordered_json j;
    j["version"] = VALEXT_VERSION;
    j["kind"] = kind;
    j["subject"] = subject;
    j["seed"] = seed;
    j["flags"] = flags;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json cj;
        cj["name"] = c.name;
        cj["status"] = status_str(c.status);
        if (!c.detail.is_null() && !c.detail.empty()) cj["detail"] = c.detail;
        if (with_timings) cj["millis"] = c.millis;
        j["checks"].push_back(std::move(cj));
    }
    j["verdict"] = verdict();
    return j;
}

std::string Report::render_text() const {
    std::ostringstream os;
    os << subject << " (" << kind << ", seed " << seed << ")\n";
    for (const auto& c : checks) {
        os << "  [" << status_str(c.status) << "] " << c.name;
        if (c.millis > 0) {
            os.setf(std::ios::fixed);
            os.precision(1);
            os << " (" << c.millis << " ms)";
        }
        os << "\n";
        if (c.status != CheckRecord::Status::pass && !c.detail.is_null() && !c.detail.empty())
            os << "        " << c.detail.dump() << "\n";
    }
    os << "verdict: " << verdict() << "\n";
    return os.str();
}

}  // namespace valext
