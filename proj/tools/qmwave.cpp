// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 qmwave contributors

#include <cstdio>

int main() {
    std::puts("qmwave CLI placeholder");
    return 0;
}
