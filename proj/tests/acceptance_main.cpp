// Acceptance suite: runs every criterion at its pinned tolerance and prints
// one pass/fail line per criterion. Nonzero exit on any failure.
#include <iostream>

#include "cqed/validate.hpp"

int main() {
    const auto results = cqed::validate::run_all({}, &std::cerr);
    cqed::validate::print_report(results, std::cout);
    return cqed::validate::all_passed(results) ? 0 : 1;
}
