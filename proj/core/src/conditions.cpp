#include "daic/conditions.hpp"

#include <sstream>

namespace daic {

std::string render(const ConditionReport& report) {
  std::ostringstream out;
  auto flag = [&](const char* name, bool ok) { out << name << ' ' << (ok ? "ok" : "FAILED") << '\n'; };
  flag("distributive", report.distributive_ok);
  flag("commutative", report.commutative_ok);
  flag("associative", report.associative_ok);
  flag("identity", report.identity_ok);
  flag("init", report.init_ok);
  for (const auto& c : report.counterexamples) {
    out << "counterexample " << c.condition << ": " << c.inputs << " -> " << c.values << '\n';
  }
  return out.str();
}

}  // namespace daic
