#include <string>
#include <vector>

#include <tornheim/cli.hpp>

int main(int argc, char** argv) {
    return tornheim::cli::run(std::vector<std::string>(argv, argv + argc));
}
