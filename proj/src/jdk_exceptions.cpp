#include "ehaudit/jdk_exceptions.hpp"

namespace ehaudit {

const std::map<std::string, std::string>& jdk_exception_edges() {
    static const std::map<std::string, std::string> edges = {
        {"Error", "Throwable"},
        {"Exception", "Throwable"},

        {"IOException", "Exception"},
        {"RuntimeException", "Exception"},
        {"ReflectiveOperationException", "Exception"},
        {"InterruptedException", "Exception"},
        {"CloneNotSupportedException", "Exception"},
        {"GeneralSecurityException", "Exception"},
        {"ParseException", "Exception"},
        {"TimeoutException", "Exception"},
        {"ExecutionException", "Exception"},
        {"BrokenBarrierException", "Exception"},
        {"URISyntaxException", "Exception"},
        {"SQLException", "Exception"},
        {"DataFormatException", "Exception"},
        {"XMLStreamException", "Exception"},
        {"JAXBException", "Exception"},
        {"NamingException", "Exception"},
        {"PrivilegedActionException", "Exception"},

        {"FileNotFoundException", "IOException"},
        {"EOFException", "IOException"},
        {"InterruptedIOException", "IOException"},
        {"UnsupportedEncodingException", "IOException"},
        {"MalformedURLException", "IOException"},
        {"SocketException", "IOException"},
        {"UnknownHostException", "IOException"},
        {"ProtocolException", "IOException"},
        {"SSLException", "IOException"},
        {"CharacterCodingException", "IOException"},
        {"ClosedChannelException", "IOException"},
        {"FileSystemException", "IOException"},
        {"ObjectStreamException", "IOException"},
        {"SyncFailedException", "IOException"},
        {"ZipException", "IOException"},
        {"HttpRetryException", "IOException"},
        {"RemoteException", "IOException"},
        {"CharConversionException", "IOException"},
        {"UTFDataFormatException", "IOException"},

        {"SocketTimeoutException", "InterruptedIOException"},
        {"ConnectException", "SocketException"},
        {"BindException", "SocketException"},
        {"NoRouteToHostException", "SocketException"},
        {"PortUnreachableException", "SocketException"},
        {"JarException", "ZipException"},
        {"NotSerializableException", "ObjectStreamException"},
        {"InvalidObjectException", "ObjectStreamException"},
        {"InvalidClassException", "ObjectStreamException"},
        {"StreamCorruptedException", "ObjectStreamException"},
        {"OptionalDataException", "ObjectStreamException"},
        {"WriteAbortedException", "ObjectStreamException"},
        {"NoSuchFileException", "FileSystemException"},
        {"FileAlreadyExistsException", "FileSystemException"},
        {"AccessDeniedException", "FileSystemException"},
        {"DirectoryNotEmptyException", "FileSystemException"},
        {"NotDirectoryException", "FileSystemException"},
        {"AtomicMoveNotSupportedException", "FileSystemException"},

        {"IllegalArgumentException", "RuntimeException"},
        {"IllegalStateException", "RuntimeException"},
        {"NullPointerException", "RuntimeException"},
        {"IndexOutOfBoundsException", "RuntimeException"},
        {"ArithmeticException", "RuntimeException"},
        {"ClassCastException", "RuntimeException"},
        {"ArrayStoreException", "RuntimeException"},
        {"UnsupportedOperationException", "RuntimeException"},
        {"ConcurrentModificationException", "RuntimeException"},
        {"NoSuchElementException", "RuntimeException"},
        {"SecurityException", "RuntimeException"},
        {"NegativeArraySizeException", "RuntimeException"},
        {"IllegalMonitorStateException", "RuntimeException"},
        {"UncheckedIOException", "RuntimeException"},
        {"CompletionException", "RuntimeException"},
        {"DateTimeException", "RuntimeException"},
        {"MissingResourceException", "RuntimeException"},
        {"EmptyStackException", "RuntimeException"},
        {"BufferOverflowException", "RuntimeException"},
        {"BufferUnderflowException", "RuntimeException"},
        {"IllformedLocaleException", "RuntimeException"},
        {"WrongMethodTypeException", "RuntimeException"},
        {"TypeNotPresentException", "RuntimeException"},

        {"NumberFormatException", "IllegalArgumentException"},
        {"InvalidPathException", "IllegalArgumentException"},
        {"IllegalCharsetNameException", "IllegalArgumentException"},
        {"UnsupportedCharsetException", "IllegalArgumentException"},
        {"IllegalFormatException", "IllegalArgumentException"},
        {"PatternSyntaxException", "IllegalArgumentException"},
        {"IllegalThreadStateException", "IllegalArgumentException"},

        {"ArrayIndexOutOfBoundsException", "IndexOutOfBoundsException"},
        {"StringIndexOutOfBoundsException", "IndexOutOfBoundsException"},
        {"CancellationException", "IllegalStateException"},

        {"ClassNotFoundException", "ReflectiveOperationException"},
        {"NoSuchMethodException", "ReflectiveOperationException"},
        {"NoSuchFieldException", "ReflectiveOperationException"},
        {"IllegalAccessException", "ReflectiveOperationException"},
        {"InstantiationException", "ReflectiveOperationException"},
        {"InvocationTargetException", "ReflectiveOperationException"},

        {"NoSuchAlgorithmException", "GeneralSecurityException"},
        {"KeyException", "GeneralSecurityException"},
        {"InvalidKeyException", "KeyException"},
        {"SignatureException", "GeneralSecurityException"},
        {"CertificateException", "GeneralSecurityException"},
        {"NoSuchProviderException", "GeneralSecurityException"},
        {"InvalidAlgorithmParameterException", "GeneralSecurityException"},
        {"KeyStoreException", "GeneralSecurityException"},
        {"UnrecoverableKeyException", "GeneralSecurityException"},

        {"SQLWarning", "SQLException"},
        {"BatchUpdateException", "SQLException"},
        {"SQLNonTransientException", "SQLException"},
        {"SQLTransientException", "SQLException"},
        {"SQLClientInfoException", "SQLException"},
        {"SQLDataException", "SQLNonTransientException"},
        {"SQLSyntaxErrorException", "SQLNonTransientException"},
        {"SQLTimeoutException", "SQLTransientException"},
        {"SQLIntegrityConstraintViolationException", "SQLNonTransientException"},

        {"AssertionError", "Error"},
        {"LinkageError", "Error"},
        {"VirtualMachineError", "Error"},
        {"ThreadDeath", "Error"},
        {"IOError", "Error"},
        {"StackOverflowError", "VirtualMachineError"},
        {"OutOfMemoryError", "VirtualMachineError"},
        {"InternalError", "VirtualMachineError"},
        {"UnknownError", "VirtualMachineError"},
        {"ExceptionInInitializerError", "LinkageError"},
        {"NoClassDefFoundError", "LinkageError"},
        {"UnsatisfiedLinkError", "LinkageError"},
        {"ClassFormatError", "LinkageError"},
        {"IncompatibleClassChangeError", "LinkageError"},
        {"BootstrapMethodError", "LinkageError"},
        {"VerifyError", "LinkageError"},
        {"UnsupportedClassVersionError", "ClassFormatError"},
        {"AbstractMethodError", "IncompatibleClassChangeError"},
        {"NoSuchMethodError", "IncompatibleClassChangeError"},
        {"NoSuchFieldError", "IncompatibleClassChangeError"},
        {"IllegalAccessError", "IncompatibleClassChangeError"},
        {"InstantiationError", "IncompatibleClassChangeError"},
    };
    return edges;
}

} // namespace ehaudit
