#ifndef HIERARCHIA_REPORT_HPP
#define HIERARCHIA_REPORT_HPP

#include <json.hpp>

#include <string>
#include <vector>

namespace hierarchia {

struct CheckResult {
    std::string id;
    bool pass = false;
    std::string order;
    nlohmann::json mismatch;  // null when passing
    std::string note;
};

inline nlohmann::json to_json(const CheckResult& r) {
    nlohmann::json j{{"id", r.id}, {"status", r.pass ? "pass" : "fail"}, {"order", r.order}};
    if (!r.mismatch.is_null()) j["mismatch"] = r.mismatch;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

}  // namespace hierarchia

#endif
