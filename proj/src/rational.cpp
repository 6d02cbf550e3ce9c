#include "workbench/rational.hpp"

#include "workbench/errors.hpp"

#include <cctype>
#include <sstream>

namespace wb {

Rat rat_parse(const std::string& text) {
  if (text.empty()) throw ParseError("rational", "empty string");
  std::size_t slash = text.find('/');
  auto check_int = [&](const std::string& s) {
    if (s.empty()) throw ParseError("rational", "bad literal '" + text + "'");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw ParseError("rational", "bad literal '" + text + "'");
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        throw ParseError("rational", "bad literal '" + text + "'");
  };
  try {
    if (slash == std::string::npos) {
      check_int(text);
      return Rat(BigInt(text));
    }
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    check_int(num);
    check_int(den);
    BigInt d(den);
    if (d == 0) throw ParseError("rational", "zero denominator in '" + text + "'");
    return Rat(BigInt(num), d);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError("rational", std::string(e.what()) + " in '" + text + "'");
  }
}

std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

Rat pow2_neg(unsigned n) {
  BigInt d = 1;
  d <<= n;
  return Rat(BigInt(1), d);
}

}  // namespace wb
