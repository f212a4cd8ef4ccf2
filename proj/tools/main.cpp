#include <cstdio>

int main() {
    std::puts("wvmn: CLI not wired up yet");
    return 0;
}
