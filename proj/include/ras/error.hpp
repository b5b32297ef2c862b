#pragma once

#include <stdexcept>
#include <string>

namespace ras
{
    struct Error : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    struct InvalidTopology : Error
    {
        using Error::Error;
    };

    // A behavior broke simulator physics (non-edge send, double output).
    // Distinct from a protocol-level abort, which is an ordinary output.
    struct HarnessFault : Error
    {
        using Error::Error;
    };

    struct RunawayProtocol : Error
    {
        using Error::Error;
    };

    struct UnsupportedQuery : Error
    {
        using Error::Error;
    };

    struct InvalidScheme : Error
    {
        using Error::Error;
    };

    struct SchemaError : Error
    {
        using Error::Error;
    };
}
