# exceptions.py - serialization exceptions
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""Errors raised while reading or writing CubeSub documents.

Every deserialization error carries the HTTP status the API answers
with; the command-line interface maps all of them to exit status 1.

"""


class SerializationException(Exception):
    """Raised when a space, plan or assembly cannot be written as a
    document, for example because it holds a value JSON cannot carry.

    `instance` is the object being written and `message` an optional
    explanation; both are kept as attributes.

    """

    def __init__(self, instance, message=None, *args, **kw):
        super(SerializationException, self).__init__(*args, **kw)
        self.message = message
        self.instance = instance


class MultipleExceptions(Exception):
    """Collects the errors of several placements, bodies or spaces so
    that all of them are reported at once.

    `exceptions` is the non-empty sequence of collected errors.

    """

    def __init__(self, exceptions, *args, **kw):
        super(MultipleExceptions, self).__init__(*args, **kw)

        #: The collected errors, in document order.
        self.exceptions = exceptions

    def message(self):
        return '; '.join(str(e) for e in self.exceptions)

    def __str__(self):
        return self.message()


class DeserializationException(Exception):
    """Raised when a JSON document does not describe a valid assembly,
    scenario, plan, space or benchmark.

    `status` is the HTTP status of the error response, 400 unless a
    subclass says otherwise. `detail` names the offending element and is
    appended to :meth:`.message`.

    """

    def __init__(self, status=400, detail=None, *args, **kw):
        super(DeserializationException, self).__init__(*args, **kw)

        #: What is wrong, naming the offending element.
        self.detail = detail

        #: Status of the HTTP error response.
        self.status = status

    def message(self):
        """Returns the error as one line of text."""
        base = 'Failed to deserialize document'
        if self.detail is not None:
            return '{0}: {1}'.format(base, self.detail)
        return base

    def __str__(self):
        return self.message()


class MissingField(DeserializationException):
    """Raised when a document does not specify a required element.

    `field` is the name of the missing element and `within` an optional
    description of the object that should contain it.

    """

    def __init__(self, field, within=None, *args, **kw):
        #: The name of the missing element.
        self.field = field

        inner = '' if within is None else ' in {0}'.format(within)
        detail = 'missing "{0}" element{1}'.format(field, inner)
        super(MissingField, self).__init__(detail=detail, *args, **kw)


class InvalidField(DeserializationException):
    """Raised when an element of a document has the wrong type, shape or
    value.

    `field` is the name of the element and `reason` describes what is
    wrong with it.

    """

    def __init__(self, field, reason, *args, **kw):
        self.field = field
        detail = 'invalid "{0}" element: {1}'.format(field, reason)
        super(InvalidField, self).__init__(detail=detail, *args, **kw)


class UnknownReference(DeserializationException):
    """Raised when a document refers to a bundled configuration or a file
    that does not exist.

    """

    def __init__(self, reference, *args, **kw):
        self.reference = reference
        detail = 'cannot resolve reference "{0}"'.format(reference)
        sup = super(UnknownReference, self)
        sup.__init__(status=404, detail=detail, *args, **kw)


class UnsupportedVersion(DeserializationException):
    """Raised when a document declares a format version this library
    cannot read.

    """

    def __init__(self, version, expected, *args, **kw):
        detail = 'unsupported format version {0!r}; expected {1}'
        sup = super(UnsupportedVersion, self)
        sup.__init__(detail=detail.format(version, expected), *args, **kw)
