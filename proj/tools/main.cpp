// Command-line harness for the AN star-product library. Subcommands are
// wired up as the corresponding modules land; `build`, `verify`, `product`
// and `sweep` are documented in the top-level README.

#include <cstdio>

int main(int argc, char** argv) {
    (void)argc;
    (void)argv;
    std::puts("anstar: no subcommands available yet");
    return 2;
}
