#include <string>
#include <vector>

#include "common.hpp"

int main(int argc, char** argv) { return fpt::run(std::vector<std::string>(argv, argv + argc)); }
