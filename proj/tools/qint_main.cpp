#include "qint/cli.hpp"

int main(int argc, char** argv) { return qint::qint_main(argc, argv); }
