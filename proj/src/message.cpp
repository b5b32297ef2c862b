#include "ras/message.hpp"

#include "ras/error.hpp"

#include <array>
#include <string>

namespace ras
{
    namespace
    {
        constexpr std::array<std::string_view, 22> names = {
            "id-announce",  "id-echo",      "topology-announce", "topology-echo", "secret-share", "input-broadcast",
            "preference",   "preference-echo", "commit",          "commit-echo",   "token",        "coin-share",
            "color",        "witness-mark", "draw-exchange",     "drawn-value",   "prompt",       "prompt-reply",
            "prompt-witness", "relay",      "edge-bit",          "abort",
        };
    }

    std::string_view tag_name(Tag tag)
    {
        return names.at(static_cast<std::size_t>(tag));
    }

    Tag tag_from_name(std::string_view name)
    {
        for (std::size_t i = 0; i < names.size(); ++i)
        {
            if (names[i] == name)
            {
                return static_cast<Tag>(i);
            }
        }
        throw SchemaError("unknown payload tag: " + std::string(name));
    }
}
