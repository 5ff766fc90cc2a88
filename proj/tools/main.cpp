#include <iostream>

#include "app/app.hpp"

int main(int argc, char** argv) { return phodge::app::main_entry(argc, argv, std::cout, std::cerr); }
