// Runs the thirteen acceptance criteria and prints one PASS/FAIL line each.
//
// usage: maclaurin_acceptance [--scale S] [--threads T] [--seed S] [ids...]
// Exit status is 0 only when every selected criterion passes.

#include <cstdlib>
#include <iostream>
#include <string>

#include "maclaurin/acceptance.hpp"

int main(int argc, char** argv) {
  maclaurin::AcceptanceOptions opt;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    auto next = [&]() -> std::string {
      if (i + 1 >= argc) {
        std::cerr << a << " needs a value\n";
        std::exit(2);
      }
      return argv[++i];
    };
    if (a == "--scale") {
      opt.sample_scale = std::stod(next());
    } else if (a == "--threads") {
      opt.threads = static_cast<unsigned>(std::stoul(next()));
    } else if (a == "--seed") {
      opt.seed = std::stoull(next());
    } else {
      opt.only.push_back(std::stoi(a));
    }
  }

  const maclaurin::AcceptanceResult r = maclaurin::run_acceptance(opt);
  int passed = 0;
  for (const auto& c : r.criteria) {
    std::cout << maclaurin::format_criterion(c) << std::endl;
    passed += c.passed;
  }
  std::cout << passed << "/" << r.criteria.size() << " criteria passed" << std::endl;
  return r.all_passed() ? 0 : 1;
}
