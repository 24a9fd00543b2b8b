#pragma once

#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dtop/cover.hpp"
#include "dtop/image.hpp"

namespace dtop {

// Output of one command: a JSON document with sorted keys plus the lines of
// the human-readable form. Timing is recorded only on request so repeated
// runs stay byte-identical.
class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  void input(const std::string& ref, const std::string& digest) {
    inputs_.push_back({{"ref", ref}, {"digest", digest}});
  }
  nlohmann::json& result() { return result_; }
  const nlohmann::json& result() const { return result_; }
  void line(const std::string& s) { lines_.push_back(s); }
  void set_seconds(double s) { seconds_ = s; }

  std::string json() const {
    nlohmann::json doc;
    doc["command"] = command_;
    doc["inputs"] = inputs_;
    doc["result"] = result_;
    if (seconds_) doc["seconds"] = *seconds_;
    return doc.dump(2) + "\n";
  }

  std::string text() const {
    std::ostringstream out;
    for (const auto& l : lines_) out << l << "\n";
    if (seconds_) out << "time: " << std::fixed << std::setprecision(3) << *seconds_ << " s\n";
    return out.str();
  }

 private:
  std::string command_;
  nlohmann::json inputs_ = nlohmann::json::array();
  nlohmann::json result_ = nlohmann::json::object();
  std::vector<std::string> lines_;
  std::optional<double> seconds_;
};

inline nlohmann::json bounds_json(const Bounds& b) {
  nlohmann::json j;
  j["lower"] = b.lower;
  j["upper"] = b.upper ? nlohmann::json(*b.upper) : nlohmann::json(nullptr);
  j["exact"] = b.exact();
  return j;
}

inline nlohmann::json points_json(const DigitalImage& img, const std::vector<Index>& idx) {
  nlohmann::json a = nlohmann::json::array();
  for (Index i : idx) a.push_back(img.point(i).coords());
  return a;
}

inline std::string points_text(const DigitalImage& img, const std::vector<Index>& idx) {
  std::string s = "{";
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? " " : "") + img.point(idx[i]).str();
  return s + "}";
}

}  // namespace dtop
