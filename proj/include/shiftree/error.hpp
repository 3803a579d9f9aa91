#pragma once

#include <stdexcept>
#include <string>

namespace shiftree {

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A generator index outside [0, rank).
class InvalidGenerator : public Error
{
public:
    using Error::Error;
};

/// Two words, trees or maps built over free groups of different rank.
class RankMismatch : public Error
{
public:
    using Error::Error;
};

/// An element handed to a group model or oracle it does not belong to.
class GroupMismatch : public Error
{
public:
    using Error::Error;
};

/// The requested answer lies beyond what a finite truncation knows.
class InsufficientDepth : public Error
{
public:
    using Error::Error;
};

/// A partial action applied outside of its domain.
class ActionUndefined : public Error
{
public:
    using Error::Error;
};

/// A tree that cannot be in the image of the embedding for the given map.
class NotInImage : public Error
{
public:
    using Error::Error;
};

/// Symbols read off a tree contradict each other.
class ConsistencyViolation : public Error
{
public:
    using Error::Error;
};

/// An input object fails its structural invariants.
class ValidationError : public Error
{
public:
    using Error::Error;
};

/// Malformed textual input (words, JSON documents).
class ParseError : public Error
{
public:
    using Error::Error;
};

} // namespace shiftree
