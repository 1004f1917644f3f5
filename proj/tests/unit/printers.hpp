#pragma once

#include <doctest.h>

#include <set>
#include <string>
#include <vector>

namespace doctest {

template <>
struct StringMaker<std::set<std::string>> {
  static String convert(const std::set<std::string>& values) {
    std::string out = "{";
    for (const auto& v : values) out += (out.size() > 1 ? ", " : "") + v;
    return (out + "}").c_str();
  }
};

template <>
struct StringMaker<std::vector<std::string>> {
  static String convert(const std::vector<std::string>& values) {
    std::string out = "[";
    for (const auto& v : values) out += (out.size() > 1 ? ", " : "") + v;
    return (out + "]").c_str();
  }
};

}  // namespace doctest
