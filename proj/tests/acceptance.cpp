// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Criteria are pinned here, including every tolerance.
#include <cmath>
#include <cstdio>
#include <iostream>

int main() {
    std::cout << "acceptance suite placeholder\n";
    return 1;
}
