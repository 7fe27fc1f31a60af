#include "frbc/cli_app.hpp"

int main(int argc, char** argv) {
    return frbc::cli_main(argc, argv);
}
