#pragma once
// Name interning: variable and constructor names are small integers so that
// free-variable sets, heaps and substitutions work on ints instead of strings.

#include <cstdint>
#include <string>

namespace lrp {

using Name = uint32_t;

Name intern(const std::string& s);
const std::string& name_str(Name n);

} // namespace lrp
