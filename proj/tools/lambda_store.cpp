#include "lambda_store/cli.hpp"

int main(int argc, char** argv)
{
    return lambda_store::run_cli(argc, argv);
}
