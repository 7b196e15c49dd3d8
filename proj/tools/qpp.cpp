#include <string>
#include <vector>

#include <qpp/cli.hpp>

int main(int argc, char** argv)
{
    return qpp::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
