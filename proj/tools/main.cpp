#include "acshift/cli.hpp"

int main(int argc, char** argv) {
    return acshift::run(argc, argv);
}
