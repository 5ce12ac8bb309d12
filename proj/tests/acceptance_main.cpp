#include "gwf/selftest.hpp"

int main() { return gwf::acceptance_main(); }
