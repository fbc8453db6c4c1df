#include "cli.hpp"

int main(int argc, char** argv)
{
    return ottoref::cli::run(argc, argv);
}
