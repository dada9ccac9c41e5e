// Runs the acceptance criteria and prints one pass/fail line per criterion.
#include <iostream>

#include "actkrr/validate.hpp"

int main() { return actkrr::run_validate(std::cout); }
