#pragma once

#include <stdexcept>
#include <string>

namespace lambda_store {

/// Base class of every error raised by the simulator.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A value violates the documented domain of an operation.
class InvalidInput : public Error
{
public:
    using Error::Error;
};

/// Malformed or out-of-range configuration. The message names the key.
class ConfigError : public Error
{
public:
    ConfigError(std::string key, const std::string& what)
        : Error(what), m_key(std::move(key))
    {
    }

    const std::string& key() const { return m_key; }

private:
    std::string m_key;
};

/// A runtime invariant monitor tripped (trace, hermiticity, phase, finite...).
class NumericalError : public Error
{
public:
    NumericalError(std::string monitor, const std::string& what)
        : Error(what), m_monitor(std::move(monitor))
    {
    }

    const std::string& monitor() const { return m_monitor; }

private:
    std::string m_monitor;
};

class IoError : public Error
{
public:
    using Error::Error;
};

/// The adiabatic coherence relation needs a nonzero control coupling.
class AdiabaticInapplicable : public Error
{
public:
    using Error::Error;
};

/// The simulated Raman coherence is too small to form a ratio against.
class NoStoredCoherence : public Error
{
public:
    using Error::Error;
};

class NothingReleased : public Error
{
public:
    using Error::Error;
};

} // namespace lambda_store
