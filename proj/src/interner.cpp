#include "interner.hpp"

#include <deque>
#include <mutex>
#include <unordered_map>

namespace lrp {

namespace {

struct Table {
  std::mutex mu;
  std::deque<std::string> strings;            // stable addresses
  std::unordered_map<std::string, Name> ids;
};

Table& table() {
  static Table t;
  return t;
}

} // namespace

Name intern(const std::string& s) {
  Table& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  auto it = t.ids.find(s);
  if (it != t.ids.end()) return it->second;
  Name id = static_cast<Name>(t.strings.size());
  t.strings.push_back(s);
  t.ids.emplace(s, id);
  return id;
}

const std::string& name_str(Name n) {
  Table& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  return t.strings[n];
}

} // namespace lrp
