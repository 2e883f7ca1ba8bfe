#include <cstdio>

int main() {
    std::puts("graphprod: subcommands not wired up yet");
    return 0;
}
